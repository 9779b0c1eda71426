//! Rank of the Selmer group cut out by the Eisenstein isogeny over an even
//! quadratic twist, read off from quadratic-field data.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SelmerInput {
    pub p_divides_h: bool,
    pub pic_zn_trivial: bool,
    pub log1_u: u64,
    pub log1_pi2: u64,
    pub g_p: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankKind {
    Exact,
    LowerBound,
}

impl RankKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RankKind::Exact => "exact",
            RankKind::LowerBound => "lower_bound",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SelmerRankResult {
    pub kind: RankKind,
    pub value: u32,
    pub branch: &'static str,
}

impl SelmerInput {
    fn check(&self) -> Result<()> {
        if !self.p_divides_h && !self.pic_zn_trivial {
            return Err(Error::InconsistentSelmerInput(
                "p does not divide h but Pic(O_K[1/N]) has nontrivial p-part",
            ));
        }
        if self.g_p == 0 {
            return Err(Error::InconsistentSelmerInput("g_p must be positive"));
        }
        Ok(())
    }
}

pub fn selmer_rank(input: &SelmerInput) -> Result<SelmerRankResult> {
    input.check()?;
    let exact = |value, branch| SelmerRankResult {
        kind: RankKind::Exact,
        value,
        branch,
    };
    let lower = |branch| SelmerRankResult {
        kind: RankKind::LowerBound,
        value: 2,
        branch,
    };
    Ok(if !input.pic_zn_trivial {
        lower("pic-nontrivial")
    } else if input.p_divides_h {
        lower("p-divides-h")
    } else if input.log1_u != 0 {
        exact(
            1,
            if input.g_p == 1 {
                "g1-unit-nonzero"
            } else {
                "g2-unit-nonzero"
            },
        )
    } else if input.g_p == 1 {
        exact(3, "g1-unit-zero")
    } else if input.log1_pi2 == 0 {
        exact(3, "g2-unit-zero-pi-zero")
    } else {
        exact(2, "g2-unit-zero-pi-nonzero")
    })
}

/// `(rank > 1, p | h or log1(u) = 0)`.
pub fn equivalence_predicate(input: &SelmerInput) -> Result<(bool, bool)> {
    let r = selmer_rank(input)?;
    Ok((r.value > 1, input.p_divides_h || input.log1_u == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inp(p_divides_h: bool, log1_u: u64, log1_pi2: u64, g_p: u64) -> SelmerInput {
        SelmerInput {
            p_divides_h,
            pic_zn_trivial: true,
            log1_u,
            log1_pi2,
            g_p,
        }
    }

    #[test]
    fn documented_cases() {
        let r = selmer_rank(&inp(false, 2, 0, 1)).unwrap();
        assert_eq!((r.kind, r.value), (RankKind::Exact, 1));
        let r = selmer_rank(&inp(false, 0, 3, 2)).unwrap();
        assert_eq!((r.kind, r.value), (RankKind::Exact, 2));
        let r = selmer_rank(&inp(false, 0, 3, 1)).unwrap();
        assert_eq!((r.kind, r.value), (RankKind::Exact, 3));
        let r = selmer_rank(&inp(false, 0, 0, 2)).unwrap();
        assert_eq!((r.kind, r.value), (RankKind::Exact, 3));
        let r = selmer_rank(&inp(true, 1, 1, 2)).unwrap();
        assert_eq!((r.kind, r.value), (RankKind::LowerBound, 2));
    }

    #[test]
    fn predicates() {
        assert_eq!(
            equivalence_predicate(&inp(true, 3, 4, 1)).unwrap(),
            (true, true)
        );
        assert_eq!(
            equivalence_predicate(&inp(false, 1, 0, 1)).unwrap(),
            (false, false)
        );
        assert_eq!(
            equivalence_predicate(&inp(false, 0, 2, 2)).unwrap(),
            (true, true)
        );
    }

    #[test]
    fn inconsistent_input() {
        let mut i = inp(false, 1, 1, 1);
        i.pic_zn_trivial = false;
        assert!(matches!(
            selmer_rank(&i),
            Err(Error::InconsistentSelmerInput(_))
        ));
    }
}
