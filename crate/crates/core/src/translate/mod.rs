//! Bridges to the sibling calculi, each with its own small reduction engine
//! so that simulation tests compare independent implementations.

mod cbv;
mod ml;
mod star;

pub use cbv::{beta_v_step, cbv_embed, cc_to_kernel, kernel_to_cc, CbvTerm, NotKernel};
pub use ml::{
    cc_to_ml, cc_val_to_ml, ml_step, ml_to_cc, ml_val_to_cc, MlClosure, MlRule, MlTerm, MlVal,
};
pub use star::{cc_to_star, star_step, star_to_cc, StarTerm, StarVal};
