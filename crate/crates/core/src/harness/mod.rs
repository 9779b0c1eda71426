//! Discriminant sweeps, fixtures, the context cache and report output.

pub mod cache;
pub mod fixtures;
pub mod report;

use std::path::Path;

use serde::Serialize;

use crate::arith::{check_level_pair, LogMap};
use crate::eisenstein::{build_context, EisensteinContext, Valuation};
use crate::error::{Error, Result};
use crate::modsym::{build_space, ModularSymbolSpace, Sign};
use crate::quadfield::{admissibility, class_number, profile, validate_discriminant};
use crate::selmer::{selmer_rank, SelmerInput, SelmerRankResult};

pub use fixtures::{check_fixtures, FixtureResult, FIXTURES};
pub use report::{SweepReport, SweepSummary, CSV_HEADER};

/// Everything computed once per `(N, p, sign)`.
#[derive(Clone, Debug)]
pub struct LevelData {
    pub space: ModularSymbolSpace,
    pub ctx: EisensteinContext,
    pub log: LogMap,
    /// Only meaningful for the plus sign.
    pub g_p: Option<u64>,
}

impl LevelData {
    pub fn build(n: u64, p: u64, sign: Sign, n_max: usize) -> Result<Self> {
        check_level_pair(n, p)?;
        let space = build_space(n)?;
        let ctx = build_context(&space, p, sign, n_max)?;
        Self::from_parts(space, ctx)
    }

    pub fn from_parts(space: ModularSymbolSpace, ctx: EisensteinContext) -> Result<Self> {
        let log = LogMap::new(ctx.n, ctx.p)?;
        let g_p = match ctx.sign {
            Sign::Plus => Some(ctx.g_p_dimension()?),
            Sign::Minus => None,
        };
        Ok(Self {
            space,
            ctx,
            log,
            g_p,
        })
    }

    /// Loads the context from `cache_dir` when present, building and saving
    /// it otherwise.
    pub fn cached(
        n: u64,
        p: u64,
        sign: Sign,
        n_max: usize,
        cache_dir: Option<&Path>,
    ) -> Result<Self> {
        let Some(dir) = cache_dir else {
            return Self::build(n, p, sign, n_max);
        };
        check_level_pair(n, p)?;
        let path = dir.join(cache::file_name(n, p, sign, n_max));
        let space = build_space(n)?;
        let ctx = if path.exists() {
            cache::load_context(&path, &space)?
        } else {
            let ctx = build_context(&space, p, sign, n_max)?;
            std::fs::create_dir_all(dir)?;
            cache::save_context(&path, &space, &ctx)?;
            ctx
        };
        Self::from_parts(space, ctx)
    }

    pub fn level(&self) -> u64 {
        self.ctx.n
    }

    pub fn prime(&self) -> u64 {
        self.ctx.p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    #[serde(rename = "N")]
    pub n: u64,
    pub p: u64,
    #[serde(rename = "D")]
    pub d: i64,
    pub h: u64,
    pub h_mod_p: u64,
    pub log1_u: Option<u64>,
    pub log1_pi2: Option<u64>,
    pub criterion: bool,
    #[serde(serialize_with = "report::valuation_string")]
    pub eis_valuation: Valuation,
    #[serde(skip)]
    pub selmer: Option<SelmerRankResult>,
    /// `(valuation >= 2) <=> criterion`, even rows only.
    pub modular_side: Option<bool>,
    /// `(Selmer rank > 1) <=> criterion`, even rows only.
    pub selmer_side: Option<bool>,
    pub consistent: bool,
}

impl SweepRow {
    pub fn is_even(&self) -> bool {
        self.d > 0
    }

    pub fn branch(&self) -> Option<&'static str> {
        self.selmer.map(|s| s.branch)
    }
}

/// One row of the even sweep. `level` must carry the plus context.
pub fn even_row(level: &LevelData, d: i64) -> Result<SweepRow> {
    if level.ctx.sign != Sign::Plus {
        return Err(Error::WrongSign("even_row"));
    }
    let (n, p) = (level.level(), level.prime());
    let prof = profile(d, n, p, &level.log)?;
    let theta = level
        .space
        .theta_element(crate::quadfield::Discriminant::new(d)?)?;
    let val = level.ctx.p_local_valuation(&theta.coords)?;
    let input = SelmerInput {
        p_divides_h: prof.p_divides_h(),
        pic_zn_trivial: prof.pic_zn_trivial,
        log1_u: prof.log1_u,
        log1_pi2: prof.log1_pi2.unwrap_or(0),
        g_p: level.g_p.unwrap_or(1),
    };
    let selmer = selmer_rank(&input)?;
    let modular_side = val.at_least(2) == prof.criterion;
    let selmer_side = (selmer.value > 1) == prof.criterion;
    Ok(SweepRow {
        n,
        p,
        d,
        h: prof.h,
        h_mod_p: prof.h_mod_p,
        log1_u: Some(prof.log1_u),
        log1_pi2: prof.log1_pi2,
        criterion: prof.criterion,
        eis_valuation: val,
        selmer: Some(selmer),
        modular_side: Some(modular_side),
        selmer_side: Some(selmer_side),
        consistent: val.at_least(1) && modular_side && selmer_side,
    })
}

/// One row of the odd sweep. `level` must carry the minus context.
pub fn odd_row(level: &LevelData, d: i64) -> Result<SweepRow> {
    if level.ctx.sign != Sign::Minus {
        return Err(Error::InvalidArgument(
            "odd twists need the minus sign context".into(),
        ));
    }
    let (n, p) = (level.level(), level.prime());
    let disc = admissibility(d, n, p, false)?;
    let h = class_number(disc);
    let theta = level.space.theta_element(disc)?;
    let val = level.ctx.p_local_valuation(&theta.coords)?;
    let criterion = h.is_multiple_of(p);
    Ok(SweepRow {
        n,
        p,
        d,
        h,
        h_mod_p: h % p,
        log1_u: None,
        log1_pi2: None,
        criterion,
        eis_valuation: val,
        selmer: None,
        modular_side: None,
        selmer_side: None,
        consistent: val.at_least(1) == criterion,
    })
}

/// Admissible discriminants in `[d_min, d_max]`, ascending.
pub fn admissible_discriminants(n: u64, p: u64, d_min: i64, d_max: i64, split: bool) -> Vec<i64> {
    (d_min..=d_max)
        .filter(|&d| validate_discriminant(d, n, p, split))
        .collect()
}

fn run_rows(
    level: &LevelData,
    ds: &[i64],
    jobs: Option<usize>,
    row: fn(&LevelData, i64) -> Result<SweepRow>,
) -> Result<Vec<SweepRow>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if jobs != Some(1) {
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                builder = builder.num_threads(j);
            }
            let pool = builder
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            return pool.install(|| ds.par_iter().map(|&d| row(level, d)).collect());
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
    ds.iter().map(|&d| row(level, d)).collect()
}

pub fn sweep_even_on(
    level: &LevelData,
    d_min: i64,
    d_max: i64,
    jobs: Option<usize>,
) -> Result<SweepReport> {
    if d_min <= 0 || d_min > d_max {
        return Err(Error::InvalidArgument(format!(
            "even sweep needs 0 < dmin <= dmax, got [{d_min}, {d_max}]"
        )));
    }
    let ds = admissible_discriminants(level.level(), level.prime(), d_min, d_max, true);
    Ok(SweepReport::new(run_rows(level, &ds, jobs, even_row)?))
}

pub fn sweep_odd_on(
    level: &LevelData,
    d_min: i64,
    d_max: i64,
    jobs: Option<usize>,
) -> Result<SweepReport> {
    if d_min > d_max || d_max >= 0 {
        return Err(Error::InvalidArgument(format!(
            "odd sweep needs dmin <= dmax < 0, got [{d_min}, {d_max}]"
        )));
    }
    let ds = admissible_discriminants(level.level(), level.prime(), d_min, d_max, false);
    Ok(SweepReport::new(run_rows(level, &ds, jobs, odd_row)?))
}

#[derive(Clone, Debug)]
pub struct SweepOptions<'a> {
    pub n_max: usize,
    pub jobs: Option<usize>,
    pub cache_dir: Option<&'a Path>,
}

impl Default for SweepOptions<'_> {
    fn default() -> Self {
        Self {
            n_max: crate::eisenstein::DEFAULT_N_MAX,
            jobs: None,
            cache_dir: None,
        }
    }
}

pub fn sweep_even(
    n: u64,
    p: u64,
    d_min: i64,
    d_max: i64,
    opts: &SweepOptions,
) -> Result<SweepReport> {
    check_level_pair(n, p)?;
    let level = LevelData::cached(n, p, Sign::Plus, opts.n_max, opts.cache_dir)?;
    sweep_even_on(&level, d_min, d_max, opts.jobs)
}

pub fn sweep_odd(
    n: u64,
    p: u64,
    d_min: i64,
    d_max: i64,
    opts: &SweepOptions,
) -> Result<SweepReport> {
    check_level_pair(n, p)?;
    let level = LevelData::cached(n, p, Sign::Minus, opts.n_max, opts.cache_dir)?;
    sweep_odd_on(&level, d_min, d_max, opts.jobs)
}
