use super::{generator_indices, shrink_with_images, sturm_bound};
use crate::arith::check_level_pair;
use crate::error::Result;
use crate::modsym::modp::ModpSpace;
use crate::modsym::HeckeIndex;

/// `dim_{F_p} M^+ / (I, p)`-generalized eigenspace, computed entirely over
/// `F_p`: the common generalized kernel of the Eisenstein generators on the
/// plus part.
pub fn g_p_modp(n: u64, p: u64) -> Result<u64> {
    check_level_pair(n, p)?;
    let space = ModpSpace::build(n, p)?;
    Ok(g_p_in(&space))
}

pub(crate) fn g_p_in(space: &ModpSpace) -> u64 {
    let n = space.level();
    let p = space.modulus();
    let mut v = space.plus().clone();
    for index in generator_indices(n, sturm_bound(n)) {
        if v.dim() == 0 {
            break;
        }
        let (l, shift) = match index {
            HeckeIndex::T(l) => (l, (l + 1) % p),
            HeckeIndex::U => (n, 1),
        };
        let images = space.hecke_apply(l, v.basis());
        v = shrink_with_images(&v, &images, shift);
    }
    v.dim() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        assert_eq!(g_p_modp(11, 5).unwrap(), 1);
        assert_eq!(g_p_modp(31, 5).unwrap(), 2);
    }

    #[test]
    fn agrees_with_integral_context() {
        use crate::eisenstein::{build_context, DEFAULT_N_MAX};
        use crate::modsym::{build_space, Sign};
        for (n, p) in [(11u64, 5u64), (31, 5), (41, 5), (61, 5), (29, 7), (71, 7)] {
            let m = build_space(n).unwrap();
            let ctx = build_context(&m, p, Sign::Plus, DEFAULT_N_MAX).unwrap();
            assert_eq!(
                ctx.g_p_dimension().unwrap(),
                g_p_modp(n, p).unwrap(),
                "N = {n}"
            );
        }
    }
}
