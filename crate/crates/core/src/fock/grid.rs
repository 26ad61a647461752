use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, Rational};
use crate::system::kappa_in_range;

/// Minimum number of interior points.
pub const MIN_GRID_POINTS: usize = 64;
pub const DEFAULT_GRID_POINTS: usize = 2000;
/// Coarsest grid of the commutator refinement sequence. Three halvings
/// from 2000 reach the rounding floor of the nested second differences.
pub const COMMUTATOR_BASE_POINTS: usize = 1000;

/// Uniform grid on `(0, x_max)` with Dirichlet ends; interior points
/// `x_k = k·h`, `k = 1..=M`, `h = x_max/(M+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub x_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(x_max: f64, points: usize) -> Result<Self> {
        if !(x_max.is_finite() && x_max > 0.0) {
            return Err(Error::InvalidArgument(format!("x_max must be positive, got {x_max}")));
        }
        if points < MIN_GRID_POINTS {
            return Err(Error::GridTooCoarse(points));
        }
        Ok(Self { x_max, points })
    }

    /// `x_max = 12/√l₂`, `M = 2000`.
    pub fn default_for(l2: u32) -> Self {
        Self {
            x_max: 12.0 / (l2 as f64).sqrt(),
            points: DEFAULT_GRID_POINTS,
        }
    }

    /// Default interval with `M = 1000`.
    pub fn commutator_base(l2: u32) -> Self {
        Self {
            points: COMMUTATOR_BASE_POINTS,
            ..Self::default_for(l2)
        }
    }

    pub fn spacing(&self) -> f64 {
        self.x_max / (self.points + 1) as f64
    }

    /// Coordinate of interior point `k ∈ 0..M` (zero-based).
    pub fn x(&self, k: usize) -> f64 {
        (k + 1) as f64 * self.spacing()
    }

    /// Same interval with the spacing halved: `M → 2M+1`.
    pub fn refine(&self) -> Self {
        Self {
            x_max: self.x_max,
            points: 2 * self.points + 1,
        }
    }
}

/// Square band matrix; entry `(i, j)` is stored when `-lower ≤ j−i ≤ upper`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedOperator {
    n: usize,
    lower: usize,
    upper: usize,
    data: Vec<f64>,
}

impl BandedOperator {
    pub fn zeros(n: usize, lower: usize, upper: usize) -> Self {
        Self {
            n,
            lower,
            upper,
            data: vec![0.0; n * (lower + upper + 1)],
        }
    }

    /// Builds from `(offset, values)` pairs; `values[i]` sits at `(i, i+offset)`.
    pub fn from_diagonals(n: usize, diagonals: &[(i64, Vec<f64>)]) -> Self {
        let lower = diagonals.iter().map(|(d, _)| (-d).max(0) as usize).max().unwrap_or(0);
        let upper = diagonals.iter().map(|(d, _)| (*d).max(0) as usize).max().unwrap_or(0);
        let mut out = Self::zeros(n, lower, upper);
        for (d, values) in diagonals {
            for (i, &v) in values.iter().enumerate() {
                let j = i as i64 + d;
                if j >= 0 && (j as usize) < n && i < n {
                    out.set(i, j as usize, v);
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    fn width(&self) -> usize {
        self.lower + self.upper + 1
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let off = j as i64 - i as i64;
        (off >= -(self.lower as i64) && off <= self.upper as i64)
            .then(|| i * self.width() + (off + self.lower as i64) as usize)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.data[s])
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j).expect("entry outside the band");
        self.data[s] = v;
    }

    fn row_range(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.lower)..(i + self.upper + 1).min(self.n)
    }

    /// Entries along `j − i = offset`.
    pub fn diagonal(&self, offset: i64) -> Vec<f64> {
        (0..self.n)
            .filter_map(|i| {
                let j = i as i64 + offset;
                (j >= 0 && (j as usize) < self.n).then(|| self.get(i, j as usize))
            })
            .collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.n, other.n))
        }
    }

    fn combine(&self, other: &Self, sign: f64) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zeros(self.n, self.lower.max(other.lower), self.upper.max(other.upper));
        for i in 0..self.n {
            for j in out.row_range(i) {
                let v = self.get(i, j) + sign * other.get(i, j);
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1.0)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            data: self.data.iter().map(|v| v * factor).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zeros(self.n, self.lower + other.lower, self.upper + other.upper);
        for i in 0..self.n {
            for k in self.row_range(i) {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in other.row_range(k) {
                    let s = out.slot(i, j).expect("product band");
                    out.data[s] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row_range(i).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

/// Mode-2 operators on a grid.
#[derive(Debug, Clone)]
pub struct GridMode2 {
    pub grid: GridSpec,
    pub l2: u32,
    pub kappa: Rational,
    /// Discrete `κ/(2x²)` at the interior points.
    pub potential: Vec<f64>,
    pub h2: BandedOperator,
    pub a2: BandedOperator,
    pub a2dag: BandedOperator,
}

/// `s = √(1+4κ)` as a float.
pub fn surd_value(kappa: &Rational) -> f64 {
    (1.0 + 4.0 * rational_to_f64(kappa)).sqrt()
}

/// Discrete inverse-square potential.
///
/// Chosen so that `x^ν`, `ν = (1+s)/2`, is annihilated exactly by
/// `−½D₂ + V` at every interior point; it tends to `κ/(2x²)` away from the
/// origin. The naive pointwise `κ/(2x²)` loses second-order convergence on
/// the singular ground state.
pub fn matched_potential(kappa: &Rational, grid: &GridSpec) -> Vec<f64> {
    let h = grid.spacing();
    if kappa.is_zero() {
        return vec![0.0; grid.points];
    }
    let nu = 0.5 * (1.0 + surd_value(kappa));
    (1..=grid.points)
        .map(|k| {
            let inv = 1.0 / k as f64;
            let up = (nu * inv.ln_1p()).exp_m1();
            let down = if k == 1 { -1.0 } else { (nu * (-inv).ln_1p()).exp_m1() };
            0.5 * (up + down) / (h * h)
        })
        .collect()
}

/// `H₂ = −½D₂ + ½l₂²x² + V`, `a₂ = √(l₂/2)x + D₁/√(2l₂)`,
/// `A₂ = a₂² − V/l₂` and `A₂† = (a₂†)² − V/l₂`.
pub fn grid_mode2(l2: u32, kappa: &Rational, grid: &GridSpec) -> Result<GridMode2> {
    if !kappa_in_range(kappa) {
        return Err(Error::KappaOutOfRange(kappa.to_string()));
    }
    if l2 == 0 {
        return Err(Error::NonPositiveMultiplier { l1: 1, l2: 0 });
    }
    let grid = GridSpec::new(grid.x_max, grid.points)?;
    let m = grid.points;
    let h = grid.spacing();
    let w = l2 as f64;
    let xs: Vec<f64> = (0..m).map(|k| grid.x(k)).collect();
    let potential = matched_potential(kappa, &grid);

    let kinetic = 0.5 / (h * h);
    let h2 = BandedOperator::from_diagonals(
        m,
        &[
            (-1, vec![-kinetic; m]),
            (0, (0..m).map(|k| 2.0 * kinetic + 0.5 * w * w * xs[k] * xs[k] + potential[k]).collect()),
            (1, vec![-kinetic; m - 1]),
        ],
    );
    let d1 = BandedOperator::from_diagonals(
        m,
        &[
            (-1, vec![-0.5 / h; m]),
            (1, vec![0.5 / h; m - 1]),
        ],
    );
    let x_op = BandedOperator::from_diagonals(m, &[(0, xs.iter().map(|x| x * (0.5 * w).sqrt()).collect())]);
    let d_scaled = d1.scale(1.0 / (2.0 * w).sqrt());
    let lower = x_op.add(&d_scaled)?;
    let raise = x_op.sub(&d_scaled)?;
    let v_over = BandedOperator::from_diagonals(m, &[(0, potential.iter().map(|v| v / w).collect())]);
    let a2 = lower.mul(&lower)?.sub(&v_over)?;
    let a2dag = raise.mul(&raise)?.sub(&v_over)?;
    Ok(GridMode2 {
        grid,
        l2,
        kappa: kappa.clone(),
        potential,
        h2,
        a2,
        a2dag,
    })
}

const BISECTION_LIMIT: usize = 400;

/// Number of eigenvalues of the symmetric tridiagonal matrix below `x`.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / q };
        q = diag[i] - x - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest `count` eigenvalues of a symmetric tridiagonal matrix by Sturm
/// bisection, ascending.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Result<Vec<f64>> {
    let n = diag.len();
    if off.len() + 1 != n || count > n {
        return Err(Error::InvalidArgument("tridiagonal shape".into()));
    }
    if diag.iter().chain(off).any(|v| !v.is_finite()) {
        return Err(Error::ConvergenceFailure("non-finite matrix entry".into()));
    }
    let radius = |i: usize| {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        left + right
    };
    let lo0 = (0..n).map(|i| diag[i] - radius(i)).fold(f64::INFINITY, f64::min);
    let hi0 = (0..n).map(|i| diag[i] + radius(i)).fold(f64::NEG_INFINITY, f64::max);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let (mut lo, mut hi) = (out.last().copied().unwrap_or(lo0).min(hi0), hi0);
        let mut steps = 0;
        while hi - lo > 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(diag, off, mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
            steps += 1;
            if steps > BISECTION_LIMIT {
                return Err(Error::ConvergenceFailure(format!("bisection for eigenvalue {k}")));
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

/// Eigenvector for the lowest eigenvalue `lambda` by inverse iteration with
/// a shift just below it, normalised to `h·Σψ² = 1` and positive at its peak.
pub fn ground_state_vector(diag: &[f64], off: &[f64], lambda: f64, h: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    let sigma = lambda - 1e-9 * (1.0 + lambda.abs());
    let mut v = vec![1.0; n];
    for _ in 0..4 {
        // Thomas sweep; T − σ is positive definite below the spectrum
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut denom = diag[0] - sigma;
        c[0] = if n > 1 { off[0] / denom } else { 0.0 };
        d[0] = v[0] / denom;
        for i in 1..n {
            denom = diag[i] - sigma - off[i - 1] * c[i - 1];
            if denom <= 0.0 || !denom.is_finite() {
                return Err(Error::ConvergenceFailure("inverse iteration pivot".into()));
            }
            c[i] = if i + 1 < n { off[i] / denom } else { 0.0 };
            d[i] = (v[i] - off[i - 1] * d[i - 1]) / denom;
        }
        for i in (0..n - 1).rev() {
            d[i] -= c[i] * d[i + 1];
        }
        let norm = (h * d.iter().map(|x| x * x).sum::<f64>()).sqrt();
        v = d.iter().map(|x| x / norm).collect();
    }
    let peak = v.iter().copied().fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
    if peak < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(v)
}

impl GridMode2 {
    pub fn eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        tridiagonal_eigenvalues(&self.h2.diagonal(0), &self.h2.diagonal(1), count)
    }

    pub fn ground_state(&self) -> Result<(f64, Vec<f64>)> {
        let diag = self.h2.diagonal(0);
        let off = self.h2.diagonal(1);
        let lambda = tridiagonal_eigenvalues(&diag, &off, 1)?[0];
        let psi = ground_state_vector(&diag, &off, lambda, self.grid.spacing())?;
        Ok((lambda, psi))
    }

    /// Indices with `x ∈ [1/√l₂, x_max − 1/√l₂]`, one oscillator length
    /// away from both ends.
    pub fn window(&self) -> Vec<usize> {
        let len = 1.0 / (self.l2 as f64).sqrt();
        (0..self.grid.points)
            .filter(|&k| {
                let x = self.grid.x(k);
                x >= len && x <= self.grid.x_max - len
            })
            .collect()
    }

    fn window_norm(&self, v: &[f64]) -> f64 {
        let h = self.grid.spacing();
        (h * self.window().iter().map(|&k| v[k] * v[k]).sum::<f64>()).sqrt()
    }

    /// `‖([H₂, A₂] + 2l₂A₂)ψ₀‖` on the window, in the grid `L²` norm.
    pub fn commutator_residual(&self) -> Result<GridResidual> {
        let (energy, psi) = self.ground_state()?;
        let comm = self.h2.commutator(&self.a2)?;
        let lowered = self.a2.apply(&psi);
        let bracket = comm.apply(&psi);
        let w = 2.0 * self.l2 as f64;
        let residual: Vec<f64> = bracket.iter().zip(&lowered).map(|(c, a)| c + w * a).collect();
        Ok(GridResidual {
            spacing: self.grid.spacing(),
            points: self.grid.points,
            ground_energy: energy,
            commutator_residual: self.window_norm(&residual),
            annihilation_residual: self.window_norm(&lowered),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridResidual {
    pub spacing: f64,
    pub points: usize,
    pub ground_energy: f64,
    /// `‖([H₂, A₂] + 2l₂A₂)ψ₀‖`.
    pub commutator_residual: f64,
    /// `‖A₂ψ₀‖`, which vanishes in the continuum.
    pub annihilation_residual: f64,
}

/// Commutator residuals on `M`, `2M+1`, `4M+3` and the two successive ratios.
pub fn commutator_convergence(l2: u32, kappa: &Rational, grid: &GridSpec) -> Result<(Vec<GridResidual>, Vec<f64>)> {
    let grids = [*grid, grid.refine(), grid.refine().refine()];
    let mut residuals = Vec::new();
    for g in &grids {
        residuals.push(grid_mode2(l2, kappa, g)?.commutator_residual()?);
    }
    let ratios = residuals
        .windows(2)
        .map(|p| p[0].commutator_residual / p[1].commutator_residual)
        .collect();
    Ok((residuals, ratios))
}
