//! Plan execution with operation counters, and the direct DFT oracle.
//!
//! Counting convention: a real multiplication is counted for every branch
//! constant applied and for every non-unit pre/postaddition entry. An
//! addition is counted for each two-operand add or subtract; the first term
//! landing in an accumulator is a move and sign flips are free.

use std::ops::{Add, AddAssign};
use std::time::{Duration, Instant};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::plan::{Coef, Destination, FftPlan, SparseRows};
use crate::scalar::Real;

pub type ComplexVector<T> = Vec<Complex<T>>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpCounters {
    pub real_mults: usize,
    pub real_adds: usize,
}

impl Add for OpCounters {
    type Output = OpCounters;

    fn add(self, rhs: Self) -> Self {
        OpCounters {
            real_mults: self.real_mults + rhs.real_mults,
            real_adds: self.real_adds + rhs.real_adds,
        }
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

/// `V_k = Σ_n v_n exp(-2πj kn/N)`, evaluated term by term.
pub fn naive_dft<T: Real>(v: &[Complex<T>]) -> ComplexVector<T> {
    let n = v.len();
    let twiddles: Vec<Complex<T>> = (0..n)
        .map(|l| {
            let a = -2.0 * std::f64::consts::PI * l as f64 / n as f64;
            Complex::new(T::from_f64_lossy(a.cos()), T::from_f64_lossy(a.sin()))
        })
        .collect();
    (0..n)
        .map(|k| {
            v.iter()
                .enumerate()
                .fold(Complex::new(T::zero(), T::zero()), |acc, (i, &x)| acc + x * twiddles[(k * i) % n])
        })
        .collect()
}

pub fn naive_dft_real<T: Real>(v: &[T]) -> ComplexVector<T> {
    let lifted: Vec<Complex<T>> = v.iter().map(|&x| Complex::new(x, T::zero())).collect();
    naive_dft(&lifted)
}

struct Accumulator<T> {
    values: Vec<T>,
    touched: Vec<bool>,
}

impl<T: Real> Accumulator<T> {
    fn new(n: usize) -> Self {
        Accumulator {
            values: vec![T::zero(); n],
            touched: vec![false; n],
        }
    }

    fn apply(&mut self, rows: &SparseRows<T>, x: &[T], ops: &mut OpCounters) {
        for (k, row) in rows.rows.iter().enumerate() {
            for &(c, coef) in row {
                let (term, negate) = match coef {
                    Coef::Add => (x[c], false),
                    Coef::Sub => (x[c], true),
                    Coef::Scale(s) => {
                        ops.real_mults += 1;
                        (s * x[c], false)
                    }
                };
                if self.touched[k] {
                    ops.real_adds += 1;
                    self.values[k] = if negate { self.values[k] - term } else { self.values[k] + term };
                } else {
                    self.touched[k] = true;
                    self.values[k] = if negate { -term } else { term };
                }
            }
        }
    }
}

/// Real and imaginary parts of the DFT of a real input.
pub fn execute_real<T: Real>(plan: &FftPlan<T>, v: &[T]) -> Result<(ComplexVector<T>, OpCounters)> {
    let n = plan.n();
    if v.len() != n {
        return Err(Error::dims(format!("input of length {n}"), v.len()));
    }
    let mut ops = OpCounters::default();
    let mut re = Accumulator::new(n);
    let mut im = Accumulator::new(n);
    re.apply(&plan.additive_re, v, &mut ops);
    im.apply(&plan.additive_im, v, &mut ops);

    for b in plan.branches() {
        let mut pre = Accumulator::new(b.rank());
        pre.apply(&b.pre_kernel, v, &mut ops);
        let scaled: Vec<T> = pre.values.iter().map(|&y| y * b.constant_value).collect();
        ops.real_mults += scaled.len();
        let dest = match b.destination {
            Destination::RealOut => &mut re,
            Destination::ImagOut => &mut im,
        };
        dest.apply(&b.post_kernel, &scaled, &mut ops);
    }

    let out = re
        .values
        .into_iter()
        .zip(im.values)
        .map(|(r, i)| Complex::new(r, i))
        .collect();
    Ok((out, ops))
}

/// Complex input by linearity: `DFT(a + jb) = DFT(a) + j·DFT(b)`.
///
/// Costs twice the real-input multiplications plus `2N` combining additions.
pub fn execute_complex<T: Real>(
    plan: &FftPlan<T>,
    v: &[Complex<T>],
) -> Result<(ComplexVector<T>, OpCounters)> {
    let n = plan.n();
    if v.len() != n {
        return Err(Error::dims(format!("input of length {n}"), v.len()));
    }
    let re: Vec<T> = v.iter().map(|z| z.re).collect();
    let im: Vec<T> = v.iter().map(|z| z.im).collect();
    let (a, ops_a) = execute_real(plan, &re)?;
    let (b, ops_b) = execute_real(plan, &im)?;
    let out = a
        .iter()
        .zip(&b)
        .map(|(x, y)| Complex::new(x.re - y.im, x.im + y.re))
        .collect();
    let combine = OpCounters {
        real_mults: 0,
        real_adds: 2 * n,
    };
    Ok((out, ops_a + ops_b + combine))
}

pub fn default_tolerance(n: usize) -> f64 {
    if n <= 32 {
        1e-10
    } else {
        1e-9
    }
}

/// Seeded uniform samples in `[-1, 1]`.
pub fn random_real_input<T: Real>(rng: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    (0..n)
        .map(|_| T::from_f64_lossy(rng.random_range(-1.0..=1.0)))
        .collect()
}

/// Largest complex modulus of `a - b`; NaN if any difference is NaN.
pub fn max_abs_error<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm().to_f64_lossy())
        .fold(0.0, worse)
}

fn worse(acc: f64, e: f64) -> f64 {
    if e.is_nan() || e > acc {
        e
    } else {
        acc
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub rng: &'static str,
    pub tolerance: f64,
    pub max_error: f64,
    pub passed: bool,
    /// Measured multiplications of the first trial.
    pub mults_per_trial: usize,
    /// Every trial measured exactly the plan's multiplication count.
    pub counters_exact: bool,
    pub totals: OpCounters,
}

pub fn verify_plan<T: Real>(plan: &FftPlan<T>, trials: usize, tolerance: f64, seed: u64) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    let mut totals = OpCounters::default();
    let mut counters_exact = true;
    let mut mults_per_trial = 0;
    let expected = plan.mult_count() + plan.scaling_count();
    for t in 0..trials {
        let v = random_real_input::<T>(&mut rng, plan.n());
        let (out, ops) = execute_real(plan, &v).expect("input sized to plan");
        let oracle = naive_dft_real(&v);
        max_error = worse(max_error, max_abs_error(&out, &oracle));
        counters_exact &= ops.real_mults == expected;
        if t == 0 {
            mults_per_trial = ops.real_mults;
        }
        totals += ops;
    }
    VerifyReport {
        n: plan.n(),
        trials,
        seed,
        rng: "ChaCha8",
        tolerance,
        max_error,
        passed: trials > 0 && max_error < tolerance && counters_exact,
        mults_per_trial,
        counters_exact,
        totals,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub n: usize,
    pub reps: usize,
    pub plan_median: Duration,
    pub naive_median: Duration,
    pub plan_mults: usize,
    /// Four real multiplications per complex product, `N²` products.
    pub naive_mults: usize,
}

impl BenchReport {
    pub fn mult_ratio(&self) -> f64 {
        self.plan_mults as f64 / self.naive_mults as f64
    }
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort_unstable();
    xs.get(xs.len() / 2).copied().unwrap_or_default()
}

pub fn bench_plan<T: Real>(plan: &FftPlan<T>, reps: usize, seed: u64) -> BenchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = random_real_input::<T>(&mut rng, plan.n());
    let mut plan_times = Vec::with_capacity(reps);
    let mut naive_times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t = Instant::now();
        std::hint::black_box(execute_real(plan, std::hint::black_box(&v)).expect("sized input"));
        plan_times.push(t.elapsed());

        let t = Instant::now();
        std::hint::black_box(naive_dft_real(std::hint::black_box(&v)));
        naive_times.push(t.elapsed());
    }
    BenchReport {
        n: plan.n(),
        reps,
        plan_median: median(plan_times),
        naive_median: median(naive_times),
        plan_mults: plan.mult_count() + plan.scaling_count(),
        naive_mults: 4 * plan.n() * plan.n(),
    }
}
