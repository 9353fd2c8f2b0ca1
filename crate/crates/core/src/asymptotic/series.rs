use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitStatus {
    Fit,
    WindowTooSmall,
}

fn binom(n: i64, k: usize) -> i64 {
    if n < 0 || (k as i64) > n {
        return 0;
    }
    let mut acc: i64 = 1;
    for t in 0..k as i64 {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

/// `C(x, k)` as a polynomial in `x`, valid for negative `x` too.
fn binom_poly(x: i64, k: usize) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for t in 0..k as i128 {
        num *= x as i128 - t;
        den *= t + 1;
    }
    (num / den) as i64
}

/// Newton-form polynomial fitted to the tail of a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailPolynomial {
    /// `(k0, n0)`: the tail is `k >= k0, n >= n0`.
    pub origin: (usize, usize),
    /// `coefficients[a][b]` multiplies `C(k - k0, a) C(n - n0, b)`.
    pub coefficients: Vec<Vec<i64>>,
    pub reproduces: bool,
}

impl TailPolynomial {
    pub fn eval(&self, k: usize, n: usize) -> i64 {
        let (k0, n0) = self.origin;
        let mut acc = 0;
        for (a, row) in self.coefficients.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                acc += c * binom_poly(k as i64 - k0 as i64, a) * binom_poly(n as i64 - n0 as i64, b);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().flatten().all(|&c| c == 0)
    }
}

/// A table `T[k][n]` against the denominator `(1 - u)^c (1 - w)^r`, `u = z^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesFit {
    pub table: Vec<Vec<i64>>,
    pub c: usize,
    pub r: usize,
    pub status: FitStatus,
    /// Coefficients of the numerator, `numerator[k][n]` at `u^k w^n`.
    pub numerator: Vec<Vec<i64>>,
    /// Bounding corner of the nonzero numerator coefficients.
    pub corner: Option<(usize, usize)>,
    /// Exponents left after cancelling common factors with the numerator.
    pub reduced_exponents: (usize, usize),
    pub tail: Option<TailPolynomial>,
}

fn times_denominator(table: &[Vec<i64>], c: usize, r: usize) -> Vec<Vec<i64>> {
    let rows = table.len();
    let cols = table.first().map_or(0, Vec::len);
    let mut out = vec![vec![0i64; cols]; rows];
    for (k, row) in out.iter_mut().enumerate() {
        for (n, cell) in row.iter_mut().enumerate() {
            let mut acc = 0;
            for a in 0..=c.min(k) {
                for b in 0..=r.min(n) {
                    let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                    acc += sign * binom(c as i64, a) * binom(r as i64, b) * table[k - a][n - b];
                }
            }
            *cell = acc;
        }
    }
    out
}

/// Divides out `(1-u)` and `(1-w)` while they divide the numerator.
fn reduce_fraction(mut num: Vec<Vec<i64>>, mut c: usize, mut r: usize) -> (usize, usize) {
    while c > 0 && !num.is_empty() {
        let cols = num[0].len();
        if (0..cols).any(|n| num.iter().map(|row| row[n]).sum::<i64>() != 0) {
            break;
        }
        // cumulative sums along k give the quotient
        for k in 1..num.len() {
            for n in 0..cols {
                num[k][n] += num[k - 1][n];
            }
        }
        num.pop();
        c -= 1;
    }
    while r > 0 && num.first().is_some_and(|row| !row.is_empty()) {
        if num.iter().any(|row| row.iter().sum::<i64>() != 0) {
            break;
        }
        for row in num.iter_mut() {
            for n in 1..row.len() {
                row[n] += row[n - 1];
            }
            row.pop();
        }
        r -= 1;
    }
    (c, r)
}

fn fit_tail(table: &[Vec<i64>], origin: (usize, usize), order: usize) -> TailPolynomial {
    let (k0, n0) = origin;
    let kk = table.len() - k0;
    let nn = table[0].len() - n0;
    let oa = order.min(kk.saturating_sub(1));
    let ob = order.min(nn.saturating_sub(1));
    let mut coefficients = vec![vec![0i64; ob + 1]; oa + 1];
    for (a, row) in coefficients.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let mut acc = 0;
            for s in 0..=a {
                for t in 0..=b {
                    let sign = if (a - s + b - t) % 2 == 0 { 1 } else { -1 };
                    acc += sign * binom(a as i64, s) * binom(b as i64, t) * table[k0 + s][n0 + t];
                }
            }
            *cell = acc;
        }
    }
    let mut tail = TailPolynomial {
        origin,
        coefficients,
        reproduces: false,
    };
    tail.reproduces = (k0..table.len()).all(|k| (n0..table[0].len()).all(|n| tail.eval(k, n) == table[k][n]));
    tail
}

/// Fits a bivariate table against `(1-u)^c (1-w)^r`.
///
/// The fit is accepted when the product vanishes outside a corner that leaves
/// at least one confirming row and column inside the window.
pub fn fit_bivariate(table: &[Vec<i64>], c: usize, r: usize) -> SeriesFit {
    let rows = table.len();
    let cols = table.first().map_or(0, Vec::len);
    let mut fit = SeriesFit {
        table: table.to_vec(),
        c,
        r,
        status: FitStatus::WindowTooSmall,
        numerator: Vec::new(),
        corner: None,
        reduced_exponents: (c, r),
        tail: None,
    };
    if rows < 2 || cols < 2 {
        return fit;
    }
    let prod = times_denominator(table, c, r);
    let mut corner: Option<(usize, usize)> = None;
    for (k, row) in prod.iter().enumerate() {
        for (n, &v) in row.iter().enumerate() {
            if v != 0 {
                let (ck, cn) = corner.unwrap_or((0, 0));
                corner = Some((ck.max(k), cn.max(n)));
            }
        }
    }
    fit.corner = corner;
    let origin = match corner {
        None => {
            fit.reduced_exponents = (0, 0);
            (0, 0)
        }
        Some((ck, cn)) => {
            if ck + 1 >= rows || cn + 1 >= cols {
                return fit;
            }
            fit.numerator = prod[..=ck].iter().map(|row| row[..=cn].to_vec()).collect();
            fit.reduced_exponents = reduce_fraction(fit.numerator.clone(), c, r);
            ((ck + 1).saturating_sub(c), (cn + 1).saturating_sub(r))
        }
    };
    fit.status = FitStatus::Fit;
    fit.tail = Some(fit_tail(table, origin, c + r));
    fit
}

/// Splits `lambda[i][n]` into its even and odd homological rows and fits both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleSeriesCheck {
    pub even: SeriesFit,
    pub odd: SeriesFit,
}

impl SocleSeriesCheck {
    pub fn is_fit(&self) -> bool {
        self.even.status == FitStatus::Fit && self.odd.status == FitStatus::Fit
    }

    pub fn tails_reproduce(&self) -> bool {
        [&self.even, &self.odd]
            .iter()
            .all(|f| f.tail.as_ref().is_some_and(|t| t.reproduces))
    }
}

pub fn socle_series_check(grid: &[Vec<i64>], c: usize, r: usize) -> SocleSeriesCheck {
    let parity = |p: usize| -> Vec<Vec<i64>> { grid.iter().skip(p).step_by(2).cloned().collect() };
    SocleSeriesCheck {
        even: fit_bivariate(&parity(0), c, r),
        odd: fit_bivariate(&parity(1), c, r),
    }
}

/// Complexity read off the `mu` series of `Ext^i`, `i <= i_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CxFit {
    pub status: FitStatus,
    pub cx: Option<usize>,
    /// `(1 - z^2)^c * sum mu_i z^i`, truncated and trimmed.
    pub numerator: Vec<i64>,
    /// Multiplicity of `z = 1` as a root of the numerator.
    pub root_multiplicity: usize,
}

pub fn cx_from_series(mu: &[i64], c: usize) -> CxFit {
    let mut fit = CxFit {
        status: FitStatus::WindowTooSmall,
        cx: None,
        numerator: Vec::new(),
        root_multiplicity: 0,
    };
    if mu.iter().all(|&m| m == 0) {
        fit.status = FitStatus::Fit;
        fit.cx = Some(0);
        return fit;
    }
    let len = mu.len();
    let mut prod = mu.to_vec();
    for _ in 0..c {
        for i in (2..len).rev() {
            prod[i] -= prod[i - 2];
        }
    }
    if len < 3 || prod[len - 1] != 0 || prod[len - 2] != 0 {
        return fit;
    }
    while prod.last() == Some(&0) {
        prod.pop();
    }
    fit.numerator = prod.clone();
    let mut e = 0;
    let mut p = prod;
    while !p.is_empty() && p.iter().sum::<i64>() == 0 {
        // synthetic division by (z - 1)
        let mut q = vec![0i64; p.len() - 1];
        let mut carry = 0;
        for i in (1..p.len()).rev() {
            carry += p[i];
            q[i - 1] = carry;
        }
        p = q;
        e += 1;
    }
    fit.root_multiplicity = e;
    fit.cx = Some(c.saturating_sub(e));
    fit.status = FitStatus::Fit;
    fit
}
