//! The size pair that decreases lexicographically along σ and id steps.

use serde::Serialize;

use crate::term::{Com, Val};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct MeasurePair {
    pub size: u64,
    pub aux: u64,
}

pub fn measure_val(v: &Val) -> MeasurePair {
    match v {
        Val::Var(_) => MeasurePair { size: 1, aux: 1 },
        Val::Abs(_, b) => {
            let m = measure(b);
            MeasurePair {
                size: m.size + 1,
                aux: m.aux + m.size,
            }
        }
    }
}

pub fn measure(t: &Com) -> MeasurePair {
    match t {
        Com::Ret(v) => measure_val(v),
        Com::App(v, m) => {
            let a = measure_val(v);
            let b = measure(m);
            MeasurePair {
                size: a.size + b.size,
                aux: a.aux + b.aux + 2 * a.size * b.size,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_com;
    use crate::term::identity;

    #[test]
    fn base_values() {
        assert_eq!(measure_val(&identity()), MeasurePair { size: 2, aux: 2 });
        assert_eq!(measure(&parse_com("z!z").unwrap()), MeasurePair { size: 2, aux: 4 });
        assert_eq!(measure_val(&Val::free("x")), MeasurePair { size: 1, aux: 1 });
    }
}
