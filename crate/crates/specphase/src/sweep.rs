//! Monte Carlo sweep over the cross-block probability `p`.
//!
//! Each trial samples an instance, runs spectral detection, scores it against
//! the planted labels and evaluates the threshold predictors on the realized
//! community spectra. Trials run in parallel; rows come back in `(p, trial)`
//! order and each trial's seed depends only on the base seed and its indices,
//! so the output does not depend on the thread count.

use rayon::prelude::*;

use specphase_core::assess::{assess, Regime};
use specphase_core::eigen::{fiedler, FiedlerOptions};
use specphase_core::gen::{generate_sbm, CommunityInstance, GenParams, NoiseScope};
use specphase_core::partition::{block_alignment, detect_communities, detectability, sign_coherence};
use specphase_core::rng::trial_seed;
use specphase_core::theory::{predict, CommunitySpectra};

use crate::io::{fmt_float, fmt_opt, CsvTable};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n1: usize,
    pub n2: usize,
    pub p1: f64,
    pub p2: f64,
    pub q: f64,
    pub seed: u64,
    pub p_grid: Vec<f64>,
    pub trials: usize,
    pub noise_scope: NoiseScope,
    pub fiedler: FiedlerOptions,
}

impl SweepConfig {
    pub fn params(&self, p: f64, seed: u64) -> GenParams {
        GenParams::new(self.n1, self.n2, self.p1, self.p2, p, self.q, seed).with_noise_scope(self.noise_scope)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.p_grid.is_empty() {
            return Err("p grid is empty".into());
        }
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        for &p in &self.p_grid {
            self.params(p, 0).validate().map_err(|e| e.to_string())?;
        }
        Ok(())
    }
}

/// Machine-readable trial outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    NotConverged,
    DegenerateSplit,
    DegeneratePartition,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::NotConverged => "not_converged",
            Status::DegenerateSplit => "degenerate_split",
            Status::DegeneratePartition => "degenerate_partition",
            Status::Failed => "failed",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Status::Ok,
            Status::NotConverged,
            Status::DegenerateSplit,
            Status::DegeneratePartition,
            Status::Failed,
        ]
        .into_iter()
        .find(|st| st.as_str() == s)
    }

    pub fn from_error(e: &specphase_core::Error) -> Self {
        use specphase_core::Error as E;
        match e {
            E::NotConverged { .. } => Status::NotConverged,
            E::DegenerateInput => Status::DegenerateSplit,
            E::DegeneratePartition { .. } => Status::DegeneratePartition,
            _ => Status::Failed,
        }
    }
}

pub fn parse_regime(s: &str) -> Option<Regime> {
    [Regime::Reliable, Regime::Intermediate, Regime::Unreliable]
        .into_iter()
        .find(|r| r.as_str() == s)
}

/// One trial of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub q: f64,
    pub trial: usize,
    pub seed: u64,
    pub lambda2_over_n: Option<f64>,
    pub detectability: Option<f64>,
    /// Realized critical value; equal sizes only.
    pub p_star_realized: Option<f64>,
    pub p_lb: Option<f64>,
    pub p_ub: Option<f64>,
    pub c_star: Option<f64>,
    pub regime: Option<Regime>,
    /// Smallest per-community fraction of Fiedler entries sharing the
    /// community's majority sign.
    pub coherence_min: Option<f64>,
    /// Largest per-community `|1^T y_i| / sqrt(n_i)`.
    pub alignment_max: Option<f64>,
    pub status: Status,
}

impl CsvTable for SweepRow {
    const SCHEMA: &'static str = "specphase-sweep v1";
    const HEADER: &'static str = "p,q,trial,seed,lambda2_over_n,detectability,p_star_realized,p_lb,p_ub,c_star,regime,coherence_min,alignment_max,status";

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_float(self.p),
            fmt_float(self.q),
            self.trial.to_string(),
            self.seed.to_string(),
            fmt_opt(self.lambda2_over_n),
            fmt_opt(self.detectability),
            fmt_opt(self.p_star_realized),
            fmt_opt(self.p_lb),
            fmt_opt(self.p_ub),
            fmt_opt(self.c_star),
            self.regime.map(|r| r.as_str().to_string()).unwrap_or_default(),
            fmt_opt(self.coherence_min),
            fmt_opt(self.alignment_max),
            self.status.as_str().to_string(),
        ]
    }
}

impl SweepRow {
    pub fn parse(cells: &[String]) -> Option<Self> {
        let f = |i: usize| crate::io::parse_opt_float(&cells[i]).ok();
        Some(Self {
            p: cells[0].parse().ok()?,
            q: cells[1].parse().ok()?,
            trial: cells[2].parse().ok()?,
            seed: cells[3].parse().ok()?,
            lambda2_over_n: f(4)?,
            detectability: f(5)?,
            p_star_realized: f(6)?,
            p_lb: f(7)?,
            p_ub: f(8)?,
            c_star: f(9)?,
            regime: if cells[10].is_empty() { None } else { Some(parse_regime(&cells[10])?) },
            coherence_min: f(11)?,
            alignment_max: f(12)?,
            status: Status::parse(&cells[13])?,
        })
    }
}

/// Inclusive grid `start, start + step, ...` up to `stop` (with a small
/// tolerance), each point rounded to 10 significant digits.
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, String> {
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(format!("invalid grid {start}:{stop}:{step}"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|k| fmt_float(start + k as f64 * step).parse().unwrap())
        .collect())
}

/// Runs trial `trial` at grid point `p_index`.
pub fn run_trial(cfg: &SweepConfig, p_index: usize, trial: usize) -> SweepRow {
    let p = cfg.p_grid[p_index];
    let seed = trial_seed(cfg.seed, p_index, trial);
    let mut row = SweepRow {
        p,
        q: cfg.q,
        trial,
        seed,
        lambda2_over_n: None,
        detectability: None,
        p_star_realized: None,
        p_lb: None,
        p_ub: None,
        c_star: None,
        regime: None,
        coherence_min: None,
        alignment_max: None,
        status: Status::Ok,
    };
    if let Err(e) = fill_trial(cfg, &cfg.params(p, seed), &mut row) {
        row.status = Status::from_error(&e);
    }
    row
}

fn fill_trial(cfg: &SweepConfig, params: &GenParams, row: &mut SweepRow) -> specphase_core::Result<()> {
    let inst = generate_sbm(params)?;
    let n = inst.graph.node_count() as f64;

    let spectra = realized_spectra(&inst, &cfg.fiedler)?;
    let pred = predict(&spectra)?;
    row.p_star_realized = pred.p_star;
    row.p_lb = Some(pred.p_lb);
    row.p_ub = Some(pred.p_ub);
    row.c_star = Some(pred.c_star);

    let (part, spectral) = detect_communities(&inst.graph, &cfg.fiedler)?;
    row.lambda2_over_n = Some(spectral.lambda2 / n);
    row.detectability = Some(detectability(&part, &inst.truth)?.value());
    let coherence = sign_coherence(&spectral.fiedler, &inst.truth)?;
    let alignment = block_alignment(&spectral.fiedler, &inst.truth)?;
    row.coherence_min = Some(coherence[0].min(coherence[1]));
    row.alignment_max = Some(alignment[0].max(alignment[1]));

    row.regime = Some(assess(&inst.graph, &part, &cfg.fiedler)?.regime);
    Ok(())
}

/// Algebraic connectivity of each planted community in the observed graph.
pub fn realized_spectra(inst: &CommunityInstance, opts: &FiedlerOptions) -> specphase_core::Result<CommunitySpectra> {
    let first = inst.community(0);
    let second = inst.community(1);
    let l1 = fiedler(&inst.graph.induced_subgraph(&first)?, opts)?.lambda2;
    let l2 = fiedler(&inst.graph.induced_subgraph(&second)?, opts)?.lambda2;
    Ok(CommunitySpectra::new(l1, l2, first.len(), second.len(), inst.params.q))
}

/// All trials in `(p, trial)` order.
pub fn run_sweep(cfg: &SweepConfig) -> Vec<SweepRow> {
    let jobs: Vec<(usize, usize)> = (0..cfg.p_grid.len())
        .flat_map(|i| (0..cfg.trials).map(move |t| (i, t)))
        .collect();
    jobs.par_iter().map(|&(i, t)| run_trial(cfg, i, t)).collect()
}

/// Per-`p` aggregate over the successful trials.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub p: f64,
    pub trials: usize,
    pub errors: usize,
    pub detectability: Stats,
    pub lambda2_over_n: Stats,
    pub p_star: Stats,
    pub c_star: Stats,
    pub frac_reliable: f64,
    pub frac_intermediate: f64,
    pub frac_unreliable: f64,
}

/// Mean and sample standard deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub mean: f64,
    pub std: f64,
    pub count: usize,
}

impl Stats {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let v: Vec<f64> = values.into_iter().collect();
        let count = v.len();
        if count == 0 {
            return Self {
                mean: f64::NAN,
                std: f64::NAN,
                count,
            };
        }
        let mean = v.iter().sum::<f64>() / count as f64;
        let std = if count > 1 {
            (v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (count - 1) as f64).sqrt()
        } else {
            0.0
        };
        Self { mean, std, count }
    }
}

pub(crate) fn fraction(count: usize, total: usize) -> f64 {
    if total == 0 {
        f64::NAN
    } else {
        count as f64 / total as f64
    }
}

pub fn summarize(rows: &[SweepRow]) -> Vec<SweepSummary> {
    let mut out: Vec<SweepSummary> = Vec::new();
    let mut start = 0;
    while start < rows.len() {
        let p = rows[start].p;
        let end = start + rows[start..].iter().take_while(|r| r.p == p).count();
        let group = &rows[start..end];
        let ok: Vec<&SweepRow> = group.iter().filter(|r| r.status == Status::Ok).collect();
        let count_regime = |want: Regime| ok.iter().filter(|r| r.regime == Some(want)).count();
        out.push(SweepSummary {
            p,
            trials: group.len(),
            errors: group.len() - ok.len(),
            detectability: Stats::of(ok.iter().filter_map(|r| r.detectability)),
            lambda2_over_n: Stats::of(ok.iter().filter_map(|r| r.lambda2_over_n)),
            p_star: Stats::of(group.iter().filter_map(|r| r.p_star_realized)),
            c_star: Stats::of(group.iter().filter_map(|r| r.c_star)),
            frac_reliable: fraction(count_regime(Regime::Reliable), ok.len()),
            frac_intermediate: fraction(count_regime(Regime::Intermediate), ok.len()),
            frac_unreliable: fraction(count_regime(Regime::Unreliable), ok.len()),
        });
        start = end;
    }
    out
}

impl CsvTable for SweepSummary {
    const SCHEMA: &'static str = "specphase-sweep-summary v1";
    const HEADER: &'static str = "p,trials,errors,detectability_mean,detectability_std,lambda2_over_n_mean,lambda2_over_n_std,p_star_mean,p_star_std,c_star_mean,frac_reliable,frac_intermediate,frac_unreliable";

    fn fields(&self) -> Vec<String> {
        vec![
            fmt_float(self.p),
            self.trials.to_string(),
            self.errors.to_string(),
            fmt_float(self.detectability.mean),
            fmt_float(self.detectability.std),
            fmt_float(self.lambda2_over_n.mean),
            fmt_float(self.lambda2_over_n.std),
            fmt_float(self.p_star.mean),
            fmt_float(self.p_star.std),
            fmt_float(self.c_star.mean),
            fmt_float(self.frac_reliable),
            fmt_float(self.frac_intermediate),
            fmt_float(self.frac_unreliable),
        ]
    }
}
