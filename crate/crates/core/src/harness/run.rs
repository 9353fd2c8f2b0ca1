use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::asymptotic::{ass_scan, cx_stability_scan, socle_series_check, AssScanReport, CxScan, FitStatus, ScanContext, SocleSeriesCheck, Stabilization};
use crate::cohomology::{
    commutation_check, eisenbud_operators, ext_module, ext_operator_action, is_isomorphism, lift_differential,
    naturality_check, CommutationCheck, EisenbudOperators, ExtDump,
};
use crate::error::{AlgebraError, Result};
use crate::field_poly::Polynomial;
use crate::graded_ring::{quotient_mod_power_raw, ModulePresentation};
use crate::groebner::{ideal_basis, krull_dimension, GroebnerBasis, MatrixDump};
use crate::harness::fixture::Fixture;
use crate::par::ExecMode;
use crate::resolution::{verify_complex, ComplexViolation, Resolution};

pub const DEFAULT_IMAX: usize = 6;
pub const DEFAULT_NMAX: usize = 4;
pub const DEFAULT_JMAX: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Gb,
    Resolve,
    Ops,
    Ext,
    AssScan,
    CxScan,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Resolve => "resolve",
            Command::Ops => "ops",
            Command::Ext => "ext",
            Command::AssScan => "ass-scan",
            Command::CxScan => "cx-scan",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub imax: usize,
    pub nmax: usize,
    pub jmax: usize,
}

/// Window overrides from the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub imax: Option<usize>,
    pub nmax: Option<usize>,
    pub jmax: Option<usize>,
    pub seed: Option<u64>,
    pub mode: ExecMode,
}

/// Flag, then fixture, then environment, then built-in default.
pub fn resolve_window(fx: &Fixture, opts: &RunOptions, env: impl Fn(&str) -> Option<String>) -> Window {
    let pick = |flag: Option<usize>, fixture: Option<usize>, var: &str, default: usize| {
        flag.or(fixture)
            .or_else(|| env(var).and_then(|v| v.trim().parse().ok()))
            .unwrap_or(default)
    };
    Window {
        imax: pick(opts.imax, fx.window.imax, "ASYPRIME_IMAX", DEFAULT_IMAX),
        nmax: pick(opts.nmax, fx.window.nmax, "ASYPRIME_NMAX", DEFAULT_NMAX),
        jmax: pick(opts.jmax, fx.window.jmax, "ASYPRIME_JMAX", DEFAULT_JMAX),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    WindowTooSmall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbSection {
    pub f_basis: Vec<String>,
    /// Gröbner basis of `I + (f)`.
    pub ideal_basis: Vec<String>,
    pub regular_dimensions: Vec<i32>,
    pub krull_dim: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionSection {
    pub length: usize,
    pub ranks: Vec<usize>,
    pub shifts: Vec<Vec<i32>>,
    pub violations: Vec<ComplexViolation>,
    /// Least `p` with `b_{i+2} = b_i` for all `i >= p` in the window.
    pub two_periodic_from: Option<usize>,
    pub differentials: Option<Vec<MatrixDump>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorSection {
    pub identity_holds: bool,
    pub chain_maps: bool,
    pub commutation: Vec<CommutationCheck>,
    /// Per coefficient module and operator: least `i*` with `t_j` bijective from there on.
    pub isomorphism_from: Vec<IsoRecord>,
    pub operators: Option<Vec<Vec<MatrixDump>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoRecord {
    pub coefficients: String,
    pub operator: usize,
    pub bijective: Vec<bool>,
    pub from: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub fixture: String,
    pub command: Command,
    pub window: Window,
    pub gb: Option<GbSection>,
    pub resolution: Option<ResolutionSection>,
    pub operators: Option<OperatorSection>,
    pub ext: Option<Vec<ExtDump>>,
    pub ass_scan: Option<AssScanReport>,
    pub socle_series: Option<SocleSeriesCheck>,
    pub cx_scan: Option<CxScan>,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(fx: &Fixture, command: Command, window: Window) -> Self {
        Report {
            fixture: fx.name.clone(),
            command,
            window,
            gb: None,
            resolution: None,
            operators: None,
            ext: None,
            ass_scan: None,
            socle_series: None,
            cx_scan: None,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, status: CheckStatus, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    fn pass_fail(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        self.check(name, status, detail);
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn window_too_small(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::WindowTooSmall)
    }
}

/// Process exit status for a batch of reports.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(Report::failed) {
        1
    } else if reports.iter().any(Report::window_too_small) {
        3
    } else {
        0
    }
}

fn two_periodic_from(ranks: &[usize]) -> Option<usize> {
    if ranks.len() < 4 {
        return None;
    }
    let mut p = ranks.len() - 2;
    while p > 0 && ranks[p + 1] == ranks[p - 1] {
        p -= 1;
    }
    // at least two confirming comparisons
    (p + 4 <= ranks.len()).then_some(p)
}

fn gb_section(fx: &Fixture, rep: &mut Report, seed: Option<u64>) -> Result<()> {
    let ring = &fx.ring;
    let q = ring.ring();
    let mut all = fx.ideal.clone();
    all.extend(ring.f().iter().cloned());
    let igb = ideal_basis(q, &all)?;
    rep.gb = Some(GbSection {
        f_basis: ring.f_basis().polynomials().iter().map(|p| p.display(q)).collect(),
        ideal_basis: igb.polynomials().iter().map(|p| p.display(q)).collect(),
        regular_dimensions: fx.regularity.dimensions.clone(),
        krull_dim: krull_dimension(ring.f_basis()),
    });
    rep.pass_fail(
        "gb-buchberger-criterion",
        ring.f_basis().s_pairs_reduce_to_zero() && igb.s_pairs_reduce_to_zero(),
        "all S-pairs reduce to zero",
    );
    if let Some(seed) = seed {
        let ok = gb_self_check(&igb, &all, seed);
        rep.pass_fail("gb-self-check", ok, format!("seed {seed}"));
    }
    Ok(())
}

/// Random members of the ideal reduce to zero, and a shuffled generator order
/// yields the same reduced basis.
fn gb_self_check(gb: &GroebnerBasis, gens: &[Polynomial], seed: u64) -> bool {
    let q = gb.ring();
    let k = q.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonzero: Vec<(&Polynomial, i32)> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| (p, p.degree().unwrap() as i32))
        .collect();
    let top = nonzero.iter().map(|(_, d)| *d).max().unwrap_or(0);
    for _ in 0..8 {
        let d = top + rng.gen_range(0..3);
        let mut acc = Polynomial::zero();
        for (g, dg) in &nonzero {
            if let Some(m) = q.monomials_of_degree(d - dg).choose(&mut rng) {
                let c = rng.gen_range(1..k.p());
                acc = acc.add(&g.mul_term(c, m, k), k);
            }
        }
        if !gb.contains_poly(&acc) {
            return false;
        }
    }
    let mut shuffled = gens.to_vec();
    shuffled.shuffle(&mut rng);
    match ideal_basis(q, &shuffled) {
        Ok(other) => other.polynomials() == gb.polynomials(),
        Err(_) => false,
    }
}

fn resolution_section(fx: &Fixture, r: &Resolution, rep: &mut Report, with_matrices: bool) {
    let report = verify_complex(r);
    let ranks = r.ranks();
    let periodic = two_periodic_from(&ranks);
    rep.resolution = Some(ResolutionSection {
        length: r.length(),
        ranks: ranks.clone(),
        shifts: (0..=r.length()).map(|i| r.degrees(i).to_vec()).collect(),
        violations: report.violations.clone(),
        two_periodic_from: periodic,
        differentials: with_matrices.then(|| r.dump().differentials),
    });
    rep.pass_fail(
        "complex-certificate",
        report.is_ok(),
        format!("{} violations", report.violations.len()),
    );
    if fx.ring.codim() == 1 {
        match periodic {
            Some(p) => rep.check("hypersurface-periodicity", CheckStatus::Pass, format!("2-periodic from {p}")),
            None => rep.check("hypersurface-periodicity", CheckStatus::WindowTooSmall, "no confirmed period"),
        }
    }
    if let Some(betti) = fx.oracle.as_ref().and_then(|o| o.betti.as_ref()) {
        let n = betti.len().min(ranks.len());
        rep.pass_fail(
            "betti-oracle",
            betti[..n] == ranks[..n] && n == betti.len(),
            format!("expected {betti:?}, computed {ranks:?}"),
        );
    }
}

fn isomorphism_records(
    r: &Resolution,
    ops: &EisenbudOperators,
    coeffs: &[(&str, ModulePresentation)],
) -> Result<Vec<IsoRecord>> {
    let mut out = Vec::new();
    let top = r.length() - 1;
    for (name, d) in coeffs {
        let exts = (0..=top).map(|i| ext_module(r, d, i)).collect::<Result<Vec<_>>>()?;
        for j in 0..ops.codim() {
            let bijective = (0..top.saturating_sub(1))
                .map(|i| {
                    ext_operator_action(ops, d, &exts[i], &exts[i + 2], j)
                        .map(|a| a.certificate.is_ok() && is_isomorphism(&a.map, &exts[i], &exts[i + 2]))
                })
                .collect::<Result<Vec<bool>>>()?;
            let mut from = bijective.len();
            while from > 0 && bijective[from - 1] {
                from -= 1;
            }
            out.push(IsoRecord {
                coefficients: name.to_string(),
                operator: j,
                from: (from + 2 <= bijective.len()).then_some(from),
                bijective,
            });
        }
    }
    Ok(out)
}

fn operator_section(fx: &Fixture, r: &Resolution, rep: &mut Report, with_matrices: bool) -> Result<()> {
    let ld = lift_differential(r);
    let ops = eisenbud_operators(&ld, &fx.ring)?;
    let identity_holds = ops.verify_identity(&ld);
    let chain_maps = ops.verify_chain_maps(r);
    let k = ModulePresentation::residue_field(fx.ring.clone());
    let coeffs = [("k", k), ("N", fx.n.clone())];
    let mut commutation = Vec::new();
    let top = r.length() - 1;
    if ops.codim() >= 2 {
        for (_, d) in &coeffs {
            let exts = (0..=top).map(|i| ext_module(r, d, i)).collect::<Result<Vec<_>>>()?;
            for i in 0..top.saturating_sub(3) {
                commutation.extend(commutation_check(&ops, d, [&exts[i], &exts[i + 2], &exts[i + 4]])?);
            }
        }
    }
    let isomorphism_from = if ops.codim() == 1 {
        isomorphism_records(r, &ops, &coeffs)?
    } else {
        Vec::new()
    };
    rep.pass_fail("eisenbud-identity", identity_holds, "sum f_j t~_j = d~ d~ exactly");
    rep.pass_fail("operator-chain-maps", chain_maps, "d t_j = t_j d over A");
    if ops.codim() >= 2 {
        let ok = commutation.iter().all(|c| c.on_presentations && c.on_cochains);
        rep.pass_fail("operator-commutation", ok, format!("{} checks", commutation.len()));
    }
    if ops.codim() == 1 {
        let found = isomorphism_from.iter().all(|rec| rec.from.is_some());
        let status = if found {
            CheckStatus::Pass
        } else {
            CheckStatus::WindowTooSmall
        };
        let detail: Vec<String> = isomorphism_from
            .iter()
            .map(|rec| format!("{}: {:?}", rec.coefficients, rec.from))
            .collect();
        rep.check("operator-eventual-isomorphism", status, detail.join(", "));
    }
    rep.operators = Some(OperatorSection {
        identity_holds,
        chain_maps,
        commutation,
        isomorphism_from,
        operators: with_matrices.then(|| ops.dump()),
    });
    Ok(())
}

fn ass_section(fx: &Fixture, ctx: &ScanContext, w: Window, mode: ExecMode, rep: &mut Report) -> Result<()> {
    let scan = ass_scan(ctx, w.imax, w.nmax, mode)?;
    let series = socle_series_check(&scan.socle_grid(), fx.ring.codim(), fx.ideal.len());
    match &scan.stabilization {
        Stabilization::Found { i0, n0, .. } => {
            rep.check("stabilization", CheckStatus::Pass, format!("empirical (i0, n0) = ({i0}, {n0})"))
        }
        Stabilization::WindowTooSmall => rep.check("stabilization", CheckStatus::WindowTooSmall, "no confirmed pair"),
    }
    rep.pass_fail(
        "union-finite",
        scan.union.len() <= ctx.candidates.len(),
        format!("{} of {} candidates", scan.union.len(), ctx.candidates.len()),
    );
    if series.is_fit() {
        rep.pass_fail("socle-series", series.tails_reproduce(), "tail polynomial reproduces the window");
    } else {
        rep.check("socle-series", CheckStatus::WindowTooSmall, "no vanishing corner");
    }
    if let Some(o) = &fx.oracle {
        if let Some(grid) = &o.ass_grid {
            let computed = scan.ass_grid();
            let ok = grid.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(n, cell)| {
                    let mut want = cell.clone();
                    want.sort();
                    computed.get(i).and_then(|r| r.get(n)) == Some(&want)
                })
            });
            rep.pass_fail("ass-grid-oracle", ok, "cellwise equality on the oracle window");
        }
        if let Some(u) = &o.union {
            let mut want = u.clone();
            want.sort();
            rep.pass_fail("union-oracle", want == scan.union, format!("expected {want:?}, computed {:?}", scan.union));
        }
        if let Some(s) = &o.stabilization {
            let want = Stabilization::Found {
                i0: s.i0,
                n0: s.n0,
                even: s.even.clone(),
                odd: s.odd.clone(),
            };
            rep.pass_fail(
                "stabilization-oracle",
                want == scan.stabilization,
                format!("expected ({}, {}), computed {:?}", s.i0, s.n0, scan.stabilization),
            );
        }
    }
    rep.ass_scan = Some(scan);
    rep.socle_series = Some(series);
    Ok(())
}

fn cx_section(fx: &Fixture, ctx: &ScanContext, w: Window, mode: ExecMode, rep: &mut Report) -> Result<()> {
    let scan = cx_stability_scan(ctx, w.jmax, w.imax, mode)?;
    match scan.status {
        FitStatus::Fit => rep.check("cx-stability", CheckStatus::Pass, format!("j* = {:?}", scan.j_star)),
        FitStatus::WindowTooSmall => rep.check("cx-stability", CheckStatus::WindowTooSmall, "tail not confirmed"),
    }
    if let Some(o) = &fx.oracle {
        if let Some(cx) = &o.cx {
            let computed = scan.cx_values();
            let ok = cx.len() <= computed.len() && cx.iter().zip(&computed).all(|(a, b)| Some(*a) == *b);
            rep.pass_fail("cx-oracle", ok, format!("expected {cx:?}, computed {computed:?}"));
        }
        if let Some(js) = o.j_star {
            rep.pass_fail("j-star-oracle", Some(js) == scan.j_star, format!("expected {js}, computed {:?}", scan.j_star));
        }
    }
    rep.cx_scan = Some(scan);
    Ok(())
}

/// Naturality squares for `u` = each generator of `I`, `n = 1`, small `i`.
fn naturality_section(fx: &Fixture, ctx: &ScanContext, rep: &mut Report) -> Result<()> {
    let r = &ctx.resolution;
    if fx.ring.codim() == 0 || r.length() < 3 {
        return Ok(());
    }
    let ops = eisenbud_operators(&lift_differential(r), &fx.ring)?;
    let d1 = quotient_mod_power_raw(&fx.n, &ctx.powers, 1);
    let d2 = quotient_mod_power_raw(&fx.n, &ctx.powers, 2);
    let mut ok = true;
    let mut count = 0;
    for u in ctx.powers.power(1).generators.iter() {
        for i in 0..=(r.length() - 3).min(2) {
            let rep_i = naturality_check(r, &ops, u, &d1, &d2, (1, 1), i)?;
            ok &= rep_i.is_ok();
            count += 1;
        }
    }
    rep.pass_fail("naturality", ok, format!("{count} squares"));
    Ok(())
}

fn monotonicity_section(ctx: &ScanContext, w: Window, rep: &mut Report) -> Result<()> {
    let mut ok = true;
    for i in 0..=w.imax {
        for n in 0..w.nmax {
            ok &= ctx.monotonicity_holds(i, n)?;
        }
    }
    rep.pass_fail("ass-monotonicity", ok, "Ass(V_{i,n+1}) within Ass(U) + Ass(V_{i,n})");
    Ok(())
}

fn context(fx: &Fixture, length: usize) -> Result<ScanContext> {
    ScanContext::new(&fx.m, fx.n.clone(), fx.powers()?, fx.candidates.clone(), length)
}

/// Runs one subcommand on one fixture.
pub fn run_experiment(fx: &Fixture, command: Command, opts: &RunOptions) -> Result<Report> {
    let w = resolve_window(fx, opts, |k| std::env::var(k).ok());
    run_with_window(fx, command, w, opts)
}

pub fn run_with_window(fx: &Fixture, command: Command, w: Window, opts: &RunOptions) -> Result<Report> {
    let mut rep = Report::new(fx, command, w);
    if matches!(command, Command::AssScan | Command::CxScan | Command::Ext | Command::Verify)
        && w.imax + 1 > fx.resolution_length
    {
        return Err(AlgebraError::WindowExceeded {
            operation: "window",
            index: w.imax,
            max: fx.resolution_length - 1,
        });
    }
    match command {
        Command::Gb => gb_section(fx, &mut rep, opts.seed)?,
        Command::Resolve => {
            let ctx = context(fx, fx.resolution_length)?;
            resolution_section(fx, &ctx.resolution, &mut rep, true);
        }
        Command::Ops => {
            let ctx = context(fx, fx.resolution_length)?;
            operator_section(fx, &ctx.resolution, &mut rep, true)?;
        }
        Command::Ext => {
            let ctx = context(fx, fx.resolution_length)?;
            let dumps = (0..=w.imax)
                .map(|i| ext_module(&ctx.resolution, &fx.n, i).map(|e| e.dump()))
                .collect::<Result<Vec<_>>>()?;
            rep.ext = Some(dumps);
        }
        Command::AssScan => {
            let ctx = context(fx, fx.resolution_length)?;
            ass_section(fx, &ctx, w, opts.mode, &mut rep)?;
        }
        Command::CxScan => {
            let ctx = context(fx, fx.resolution_length)?;
            cx_section(fx, &ctx, w, opts.mode, &mut rep)?;
        }
        Command::Verify => {
            gb_section(fx, &mut rep, opts.seed)?;
            let ctx = context(fx, fx.resolution_length)?;
            resolution_section(fx, &ctx.resolution, &mut rep, false);
            if fx.ring.codim() > 0 {
                operator_section(fx, &ctx.resolution, &mut rep, false)?;
            }
            ass_section(fx, &ctx, w, opts.mode, &mut rep)?;
            cx_section(fx, &ctx, w, opts.mode, &mut rep)?;
            naturality_section(fx, &ctx, &mut rep)?;
            monotonicity_section(&ctx, w, &mut rep)?;
        }
    }
    Ok(rep)
}

