use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::asymptotic::primes::{associated_primes, PrimeIdeal};
use crate::asymptotic::series::{cx_from_series, CxFit, FitStatus};
use crate::cohomology::{ext_module, ExtModule};
use crate::error::{AlgebraError, Result};
use crate::graded_ring::{gr_piece, quotient_mod_power_raw, IdealPowerCache, ModulePresentation, RingPresentation};
use crate::par::{map_ordered, ExecMode};
use crate::resolution::{resolve, Resolution};

/// Everything a grid scan needs: `A`, a resolution of `M`, `N`, powers of `I`
/// and the candidate primes.
#[derive(Debug)]
pub struct ScanContext {
    pub ring: Arc<RingPresentation>,
    pub resolution: Resolution,
    pub n_module: ModulePresentation,
    pub powers: IdealPowerCache,
    pub candidates: Vec<PrimeIdeal>,
}

impl ScanContext {
    pub fn new(
        m: &ModulePresentation,
        n_module: ModulePresentation,
        powers: IdealPowerCache,
        candidates: Vec<PrimeIdeal>,
        length: usize,
    ) -> Result<Self> {
        Ok(ScanContext {
            ring: m.ring().clone(),
            resolution: resolve(m, length)?,
            n_module,
            powers,
            candidates,
        })
    }

    /// `N / I^n N` on the generators of `N`.
    pub fn coefficient(&self, n: usize) -> ModulePresentation {
        quotient_mod_power_raw(&self.n_module, &self.powers, n)
    }

    /// `V_{i,n} = Ext^i(M, N/I^n N)`.
    pub fn ext(&self, i: usize, n: usize) -> Result<ExtModule> {
        ext_module(&self.resolution, &self.coefficient(n), i)
    }

    fn check_window(&self, i_max: usize) -> Result<()> {
        if i_max + 1 > self.resolution.length() {
            return Err(AlgebraError::WindowExceeded {
                operation: "scan",
                index: i_max,
                max: self.resolution.length().saturating_sub(1),
            });
        }
        Ok(())
    }

    fn labels(&self, e: &ExtModule) -> Result<Vec<String>> {
        let mut v: Vec<String> = associated_primes(e.presentation(), &self.candidates)?
            .into_iter()
            .map(|p| p.label)
            .collect();
        v.sort();
        Ok(v)
    }

    /// `Ass(V_{i,n+1}) ⊆ Ass(Ext^i(M, I^n N / I^{n+1} N)) ∪ Ass(V_{i,n})`.
    pub fn monotonicity_holds(&self, i: usize, n: usize) -> Result<bool> {
        self.check_window(i)?;
        let upper = self.labels(&self.ext(i, n + 1)?)?;
        let lower = self.labels(&self.ext(i, n)?)?;
        let gr = gr_piece(&self.n_module, &self.powers, n);
        let piece = self.labels(&ext_module(&self.resolution, &gr.presentation, i)?)?;
        Ok(upper.iter().all(|p| lower.contains(p) || piece.contains(p)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub i: usize,
    pub n: usize,
    pub mu: usize,
    pub socle_dim: usize,
    pub ass: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Stabilization {
    /// Empirical: constancy observed on the window with a confirming margin.
    Found {
        i0: usize,
        n0: usize,
        even: Vec<String>,
        odd: Vec<String>,
    },
    WindowTooSmall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssScanReport {
    pub i_max: usize,
    pub n_max: usize,
    /// Row-major: `(0,0), (0,1), ..., (i_max, n_max)`.
    pub cells: Vec<Cell>,
    pub union: Vec<String>,
    pub stabilization: Stabilization,
}

impl AssScanReport {
    pub fn cell(&self, i: usize, n: usize) -> &Cell {
        &self.cells[i * (self.n_max + 1) + n]
    }

    /// `grid[i][n]` of associated-prime labels.
    pub fn ass_grid(&self) -> Vec<Vec<Vec<String>>> {
        (0..=self.i_max)
            .map(|i| (0..=self.n_max).map(|n| self.cell(i, n).ass.clone()).collect())
            .collect()
    }

    pub fn socle_grid(&self) -> Vec<Vec<i64>> {
        (0..=self.i_max)
            .map(|i| (0..=self.n_max).map(|n| self.cell(i, n).socle_dim as i64).collect())
            .collect()
    }
}

/// Fills `Ass`, `mu` and socle dimension of `V_{i,n}` on `0..=i_max × 0..=n_max`.
pub fn ass_scan(ctx: &ScanContext, i_max: usize, n_max: usize, mode: ExecMode) -> Result<AssScanReport> {
    ctx.check_window(i_max)?;
    let coeffs: Vec<ModulePresentation> = (0..=n_max).map(|n| ctx.coefficient(n)).collect();
    let idx: Vec<(usize, usize)> = (0..=i_max).flat_map(|i| (0..=n_max).map(move |n| (i, n))).collect();
    let cells = map_ordered(mode, &idx, |&(i, n)| -> Result<Cell> {
        let e = ext_module(&ctx.resolution, &coeffs[n], i)?;
        Ok(Cell {
            i,
            n,
            mu: e.mu(),
            socle_dim: e.socle_dimension(),
            ass: ctx.labels(&e)?,
        })
    })
    .into_iter()
    .collect::<Result<Vec<Cell>>>()?;
    let mut union: Vec<String> = cells.iter().flat_map(|c| c.ass.iter().cloned()).collect();
    union.sort();
    union.dedup();
    let mut report = AssScanReport {
        i_max,
        n_max,
        cells,
        union,
        stabilization: Stabilization::WindowTooSmall,
    };
    report.stabilization = detect_stabilization(&report.ass_grid());
    Ok(report)
}

/// Least `(i0, n0)` (lexicographic) with the even-index and odd-index sets each
/// constant on `i >= i0, n >= n0`.
///
/// A pair is accepted only with a full confirming period (`i_max - i0 >= 3`)
/// and a confirming column (`n_max - n0 >= 1`).
pub fn detect_stabilization(grid: &[Vec<Vec<String>>]) -> Stabilization {
    let Some(first) = grid.first() else {
        return Stabilization::WindowTooSmall;
    };
    let i_max = grid.len() - 1;
    let n_max = first.len().saturating_sub(1);
    if first.is_empty() || i_max < 3 || n_max < 1 {
        return Stabilization::WindowTooSmall;
    }
    for i0 in 0..=i_max - 3 {
        for n0 in 0..n_max {
            let even = &grid[i0 + (i0 % 2)][n0];
            let odd = &grid[i0 + 1 - (i0 % 2)][n0];
            let constant = (i0..=i_max).all(|i| {
                let want = if i % 2 == 0 { even } else { odd };
                (n0..=n_max).all(|n| &grid[i][n] == want)
            });
            if constant {
                return Stabilization::Found {
                    i0,
                    n0,
                    even: even.clone(),
                    odd: odd.clone(),
                };
            }
        }
    }
    Stabilization::WindowTooSmall
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxEntry {
    pub j: usize,
    pub mu: Vec<i64>,
    pub fit: CxFit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxScan {
    pub i_max: usize,
    pub entries: Vec<CxEntry>,
    /// Least `j` from which `cx` is constant, confirmed by a later `j`.
    pub j_star: Option<usize>,
    pub status: FitStatus,
}

impl CxScan {
    pub fn cx_values(&self) -> Vec<Option<usize>> {
        self.entries.iter().map(|e| e.fit.cx).collect()
    }
}

/// `cx(M, N/I^j N)` for `0 <= j <= j_max` from `mu(Ext^i)`, `i <= i_max`.
pub fn cx_stability_scan(ctx: &ScanContext, j_max: usize, i_max: usize, mode: ExecMode) -> Result<CxScan> {
    ctx.check_window(i_max)?;
    let coeffs: Vec<ModulePresentation> = (0..=j_max).map(|j| ctx.coefficient(j)).collect();
    let idx: Vec<(usize, usize)> = (0..=j_max).flat_map(|j| (0..=i_max).map(move |i| (j, i))).collect();
    let mus = map_ordered(mode, &idx, |&(j, i)| ext_module(&ctx.resolution, &coeffs[j], i).map(|e| e.mu() as i64))
        .into_iter()
        .collect::<Result<Vec<i64>>>()?;
    let c = ctx.ring.codim();
    let entries: Vec<CxEntry> = (0..=j_max)
        .map(|j| {
            let mu = mus[j * (i_max + 1)..(j + 1) * (i_max + 1)].to_vec();
            let fit = cx_from_series(&mu, c);
            CxEntry { j, mu, fit }
        })
        .collect();
    let all_fit = entries.iter().all(|e| e.fit.status == FitStatus::Fit);
    let mut j_star = None;
    if all_fit {
        let last = entries[j_max].fit.cx;
        let mut js = j_max;
        while js > 0 && entries[js - 1].fit.cx == last {
            js -= 1;
        }
        if js < j_max {
            j_star = Some(js);
        }
    }
    let status = if j_star.is_some() {
        FitStatus::Fit
    } else {
        FitStatus::WindowTooSmall
    };
    Ok(CxScan {
        i_max,
        entries,
        j_star,
        status,
    })
}
