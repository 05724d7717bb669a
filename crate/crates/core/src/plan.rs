//! Branch matrices, multiplicative-complexity accounting and plan compilation.
//!
//! Writing `W^m = cos θ - j sin θ` with `θ = 2πm/N` and pairing each class
//! `m ≥ 1` with its partner `-m` gives, for a real input,
//!
//! ```text
//! Re DFT = Re M0 + Σ Re(M_m + M_-m) cos θ + Im(M_m - M_-m) sin θ
//! Im DFT = Im M0 + Σ Im(M_m + M_-m) cos θ - Re(M_m - M_-m) sin θ
//! ```
//!
//! Each of the four integer matrices is rank-factored as `C·R`, so a branch
//! costs `rank` multiplications by its constant. The asymmetric class
//! `m = N/8` (when `8 | N`) has `W^m = (1 - j)·√2/2` and contributes
//! `(Re + Im)·√2/2` to the real part and `(Im - Re)·√2/2` to the imaginary
//! part.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::nlog2n_rounded;
use crate::classes::{check_blocklength, ClassDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{rank, rank_factor, rref, vstack, Matrix};
use crate::scalar::{ExactScalar, Real};
use crate::{Rational, RationalMatrix};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchKind {
    Symmetric,
    Asymmetric,
}

/// The four integer matrices feeding the multiplicative branches of class `m`.
///
/// For the asymmetric class `re_sum` holds `Re M_m + Im M_m`, `im_diff` holds
/// `Im M_m - Re M_m` and the other two are zero.
#[derive(Clone, Debug)]
pub struct BranchMatrices {
    pub m: i64,
    pub kind: BranchKind,
    pub re_sum: Matrix<i8>,
    pub re_diff: Matrix<i8>,
    pub im_sum: Matrix<i8>,
    pub im_diff: Matrix<i8>,
}

pub fn branch_matrices(dec: &ClassDecomposition, m: i64) -> Result<BranchMatrices> {
    let invalid = || Error::InvalidClassIndex { n: dec.n(), m };
    if m < 1 {
        return Err(invalid());
    }
    let pos = dec.get(m).ok_or_else(invalid)?;
    if dec.asymmetric_index() == Some(m) {
        let n = dec.n();
        return Ok(BranchMatrices {
            m,
            kind: BranchKind::Asymmetric,
            re_sum: pos.re.add(&pos.im),
            re_diff: Matrix::zeros(n, n),
            im_sum: Matrix::zeros(n, n),
            im_diff: pos.im.sub(&pos.re),
        });
    }
    let neg = dec.get(-m).ok_or_else(invalid)?;
    Ok(BranchMatrices {
        m,
        kind: BranchKind::Symmetric,
        re_sum: pos.re.add(&neg.re),
        re_diff: pos.re.sub(&neg.re),
        im_sum: pos.im.add(&neg.im),
        im_diff: pos.im.sub(&neg.im),
    })
}

fn exact_rank(m: &Matrix<i8>) -> usize {
    rank(&m.to_exact::<Rational>())
}

fn stacked_rank(a: &Matrix<i8>, b: &Matrix<i8>) -> usize {
    let stacked = vstack(a, b).expect("branch matrices share a width");
    exact_rank(&stacked)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRanks {
    pub m: i64,
    pub kind: BranchKind,
    pub re_sum: usize,
    pub re_diff: usize,
    pub im_sum: usize,
    pub im_diff: usize,
    /// `rank [re_sum; im_sum]` (symmetric only).
    pub stacked_sum: usize,
    /// `rank [re_diff; im_diff]` (symmetric only).
    pub stacked_diff: usize,
}

impl ClassRanks {
    pub fn realized(&self) -> usize {
        self.re_sum + self.re_diff + self.im_sum + self.im_diff
    }

    pub fn stacked(&self) -> usize {
        match self.kind {
            BranchKind::Symmetric => self.stacked_sum + self.stacked_diff,
            BranchKind::Asymmetric => self.re_sum + self.im_diff,
        }
    }

    /// Stacking real over imaginary loses no rank.
    pub fn stacking_is_additive(&self) -> bool {
        self.kind == BranchKind::Asymmetric
            || (self.stacked_sum == self.re_sum + self.im_sum
                && self.stacked_diff == self.re_diff + self.im_diff)
    }

    pub fn sum_diff_symmetric(&self) -> bool {
        self.kind == BranchKind::Asymmetric
            || (self.re_sum == self.re_diff && self.im_sum == self.im_diff)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub n: usize,
    pub per_class: Vec<ClassRanks>,
    /// Sum of stacked ranks over symmetric classes plus the asymmetric pair.
    pub eq6_total: usize,
    /// Sum of the individual branch ranks; equals the plan's multiplication count.
    pub realized_total: usize,
    /// `2 Σ (rank re_sum + rank im_sum)` over symmetric classes plus the
    /// asymmetric pair.
    pub simplified_total: usize,
    pub nlog2n: u64,
    pub stacking_additive: bool,
    pub sum_diff_symmetric: bool,
    /// Every reduced row has entries in `{-1, 0, 1}`.
    pub signed_binary: bool,
}

pub fn complexity(dec: &ClassDecomposition) -> ComplexityReport {
    let mut per_class = Vec::new();
    let mut signed_binary = true;
    let mut check = |m: &Matrix<i8>| -> usize {
        let r = rref(&m.to_exact::<Rational>());
        signed_binary &= r.is_signed_binary();
        r.rank
    };

    for m in dec.symmetric_positive() {
        let b = branch_matrices(dec, m).expect("symmetric index");
        per_class.push(ClassRanks {
            m,
            kind: BranchKind::Symmetric,
            re_sum: check(&b.re_sum),
            re_diff: check(&b.re_diff),
            im_sum: check(&b.im_sum),
            im_diff: check(&b.im_diff),
            stacked_sum: stacked_rank(&b.re_sum, &b.im_sum),
            stacked_diff: stacked_rank(&b.re_diff, &b.im_diff),
        });
    }
    if let Some(m) = dec.asymmetric_index() {
        let b = branch_matrices(dec, m).expect("asymmetric index");
        per_class.push(ClassRanks {
            m,
            kind: BranchKind::Asymmetric,
            re_sum: check(&b.re_sum),
            re_diff: 0,
            im_sum: 0,
            im_diff: check(&b.im_diff),
            stacked_sum: 0,
            stacked_diff: 0,
        });
    }

    let eq6_total = per_class.iter().map(ClassRanks::stacked).sum();
    let realized_total = per_class.iter().map(ClassRanks::realized).sum();
    let simplified_total = per_class
        .iter()
        .map(|c| match c.kind {
            BranchKind::Symmetric => 2 * (c.re_sum + c.im_sum),
            BranchKind::Asymmetric => c.re_sum + c.im_diff,
        })
        .sum();

    ComplexityReport {
        n: dec.n(),
        stacking_additive: per_class.iter().all(ClassRanks::stacking_is_additive),
        sum_diff_symmetric: per_class.iter().all(ClassRanks::sum_diff_symmetric),
        per_class,
        eq6_total,
        realized_total,
        simplified_total,
        nlog2n: nlog2n_rounded(dec.n() as u64),
        signed_binary,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantKind {
    Cosine,
    Sine,
    HalfSqrt2,
}

impl ConstantKind {
    pub fn value(self, m: i64, n: usize) -> f64 {
        let theta = 2.0 * std::f64::consts::PI * m as f64 / n as f64;
        match self {
            ConstantKind::Cosine => theta.cos(),
            ConstantKind::Sine => theta.sin(),
            ConstantKind::HalfSqrt2 => std::f64::consts::FRAC_1_SQRT_2,
        }
    }
}

impl fmt::Display for ConstantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstantKind::Cosine => "cos",
            ConstantKind::Sine => "sin",
            ConstantKind::HalfSqrt2 => "sqrt2/2",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Destination {
    RealOut,
    ImagOut,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// One signed term of a sparse accumulation pass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Coef<T> {
    Add,
    Sub,
    Scale(T),
}

/// Sparse rows; each row accumulates `Σ coef · x[col]`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct SparseRows<T> {
    pub(crate) rows: Vec<Vec<(usize, Coef<T>)>>,
}

impl<T: Real> SparseRows<T> {
    fn from_exact<E: ExactScalar>(m: &Matrix<E>, sign: Sign) -> Self {
        let rows = m
            .row_iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| {
                        let v = if sign == Sign::Minus { -v.clone() } else { v.clone() };
                        let coef = if v.is_one() {
                            Coef::Add
                        } else if (-v.clone()).is_one() {
                            Coef::Sub
                        } else {
                            Coef::Scale(T::from_f64_lossy(v.to_f64()))
                        };
                        (c, coef)
                    })
                    .collect()
            })
            .collect();
        SparseRows { rows }
    }

    fn scalings(&self) -> usize {
        self.rows
            .iter()
            .flatten()
            .filter(|(_, c)| matches!(c, Coef::Scale(_)))
            .count()
    }
}

/// Multiplication-free part: `Re M0` and `Im M0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveStage {
    pub re_m0: Matrix<i8>,
    pub im_m0: Matrix<i8>,
}

/// `sign · constant · C·(R·v)` routed to one output half.
#[derive(Clone, Debug)]
pub struct MultiplicativeBranch<T> {
    pub m: i64,
    pub constant_kind: ConstantKind,
    pub constant_value: T,
    /// `R`, `r × N`.
    pub preadd: RationalMatrix,
    /// `C`, `N × r`.
    pub postadd: RationalMatrix,
    pub destination: Destination,
    pub sign: Sign,
    pub(crate) pre_kernel: SparseRows<T>,
    pub(crate) post_kernel: SparseRows<T>,
}

impl<T: Real> MultiplicativeBranch<T> {
    pub fn new(
        m: i64,
        constant_kind: ConstantKind,
        constant_value: T,
        preadd: RationalMatrix,
        postadd: RationalMatrix,
        destination: Destination,
        sign: Sign,
    ) -> Result<Self> {
        let r = preadd.rows();
        if r == 0 || postadd.cols() != r || postadd.rows() != preadd.cols() {
            return Err(Error::dims(
                format!("R r×N and C N×r with r ≥ 1 (R is {}x{})", preadd.rows(), preadd.cols()),
                format!("C {}x{}", postadd.rows(), postadd.cols()),
            ));
        }
        let pre_kernel = SparseRows::from_exact(&preadd, Sign::Plus);
        let post_kernel = SparseRows::from_exact(&postadd, sign);
        Ok(MultiplicativeBranch {
            m,
            constant_kind,
            constant_value,
            preadd,
            postadd,
            destination,
            sign,
            pre_kernel,
            post_kernel,
        })
    }

    pub fn rank(&self) -> usize {
        self.preadd.rows()
    }

    /// `C·R`, the branch matrix this branch realises.
    pub fn product(&self) -> RationalMatrix {
        self.postadd.matmul(&self.preadd).expect("shapes checked at construction")
    }
}

impl<T: PartialEq> PartialEq for MultiplicativeBranch<T> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
            && self.constant_kind == other.constant_kind
            && self.constant_value == other.constant_value
            && self.preadd == other.preadd
            && self.postadd == other.postadd
            && self.destination == other.destination
            && self.sign == other.sign
    }
}

/// Executable fast transform for one blocklength.
#[derive(Clone, Debug)]
pub struct FftPlan<T> {
    n: usize,
    additive: AdditiveStage,
    branches: Vec<MultiplicativeBranch<T>>,
    mult_count: usize,
    add_count: usize,
    scaling_count: usize,
    pub(crate) additive_re: SparseRows<T>,
    pub(crate) additive_im: SparseRows<T>,
}

impl<T: PartialEq> PartialEq for FftPlan<T> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.additive == other.additive && self.branches == other.branches
    }
}

impl<T: Real> FftPlan<T> {
    /// Assembles a plan and derives its operation counts.
    pub fn from_parts(
        n: usize,
        additive: AdditiveStage,
        branches: Vec<MultiplicativeBranch<T>>,
    ) -> Result<Self> {
        check_blocklength(n)?;
        for m in [&additive.re_m0, &additive.im_m0] {
            if m.shape() != (n, n) {
                return Err(Error::dims(format!("{n}x{n} additive stage"), format!("{:?}", m.shape())));
            }
            if m.as_slice().iter().any(|v| v.abs() > 1) {
                return Err(Error::PlanFormat("additive stage entries must lie in {-1, 0, 1}".into()));
            }
        }
        for b in &branches {
            if b.preadd.cols() != n {
                return Err(Error::dims(format!("branch width {n}"), b.preadd.cols()));
            }
            let c = b.constant_value;
            if !(c > T::zero() && c < T::one()) {
                return Err(Error::PlanFormat(format!(
                    "branch constant {c} for m={} is not strictly between 0 and 1",
                    b.m
                )));
            }
        }
        let sparse = |m: &Matrix<i8>| SparseRows::from_exact(&m.to_exact::<Rational>(), Sign::Plus);
        let mut plan = FftPlan {
            n,
            additive_re: sparse(&additive.re_m0),
            additive_im: sparse(&additive.im_m0),
            additive,
            mult_count: branches.iter().map(MultiplicativeBranch::rank).sum(),
            scaling_count: branches
                .iter()
                .map(|b| b.pre_kernel.scalings() + b.post_kernel.scalings())
                .sum(),
            branches,
            add_count: 0,
        };
        plan.add_count = plan.count_adds();
        Ok(plan)
    }

    /// Mirrors the executor's accumulation order: the first term landing in
    /// an output or preadded value is a move, every later one an addition.
    fn count_adds(&self) -> usize {
        let mut touched_re = vec![false; self.n];
        let mut touched_im = vec![false; self.n];
        let mut adds = 0;
        let mut land = |touched: &mut [bool], rows: &SparseRows<T>| {
            for (k, row) in rows.rows.iter().enumerate() {
                for _ in row {
                    if touched[k] {
                        adds += 1;
                    }
                    touched[k] = true;
                }
            }
        };
        land(&mut touched_re, &self.additive_re);
        land(&mut touched_im, &self.additive_im);
        let mut pre_adds = 0;
        for b in &self.branches {
            pre_adds += b
                .pre_kernel
                .rows
                .iter()
                .map(|r| r.len().saturating_sub(1))
                .sum::<usize>();
            match b.destination {
                Destination::RealOut => land(&mut touched_re, &b.post_kernel),
                Destination::ImagOut => land(&mut touched_im, &b.post_kernel),
            }
        }
        adds + pre_adds
    }
}

impl<T> FftPlan<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn additive(&self) -> &AdditiveStage {
        &self.additive
    }

    pub fn branches(&self) -> &[MultiplicativeBranch<T>] {
        &self.branches
    }

    /// Branch-constant multiplications per real-input execution.
    pub fn mult_count(&self) -> usize {
        self.mult_count
    }

    pub fn add_count(&self) -> usize {
        self.add_count
    }

    /// Non-unit entries in the pre/postaddition matrices, executed as extra
    /// multiplications. Zero for every blocklength up to 64.
    pub fn scaling_count(&self) -> usize {
        self.scaling_count
    }
}

impl<T: Real> FftPlan<T> {
    pub fn compile(n: usize) -> Result<Self> {
        compile_plan(&ClassDecomposition::new(n)?)
    }
}

pub fn compile_plan<T: Real>(dec: &ClassDecomposition) -> Result<FftPlan<T>> {
    let n = dec.n();
    let m0 = dec.get(0).expect("class 0 always exists");
    let additive = AdditiveStage {
        re_m0: m0.re.clone(),
        im_m0: m0.im.clone(),
    };

    let mut branches = Vec::new();
    let mut push = |m: i64, source: &Matrix<i8>, kind: ConstantKind, dest: Destination, sign: Sign| -> Result<()> {
        let exact = source.to_exact::<Rational>();
        match rank_factor(&exact) {
            Ok((c, r)) => {
                let value = T::from_f64_lossy(kind.value(m, n));
                branches.push(MultiplicativeBranch::new(m, kind, value, r, c, dest, sign)?);
                Ok(())
            }
            Err(Error::ZeroMatrix) => Ok(()),
            Err(e) => Err(e),
        }
    };

    use ConstantKind::*;
    use Destination::*;
    for m in dec.symmetric_positive() {
        let b = branch_matrices(dec, m)?;
        push(m, &b.re_sum, Cosine, RealOut, Sign::Plus)?;
        push(m, &b.im_diff, Sine, RealOut, Sign::Plus)?;
        push(m, &b.im_sum, Cosine, ImagOut, Sign::Plus)?;
        push(m, &b.re_diff, Sine, ImagOut, Sign::Minus)?;
    }
    if let Some(m) = dec.asymmetric_index() {
        let b = branch_matrices(dec, m)?;
        push(m, &b.re_sum, HalfSqrt2, RealOut, Sign::Plus)?;
        push(m, &b.im_diff, HalfSqrt2, ImagOut, Sign::Plus)?;
    }

    FftPlan::from_parts(n, additive, branches)
}

/// Signed input combination formed by one preaddition row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCombination {
    /// `(input index, sign)` in ascending index order.
    pub terms: Vec<(usize, i8)>,
}

/// Two inputs entering a preaddition together, as `x_a + x_b` or `x_a - x_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoupledPair {
    pub a: usize,
    pub b: usize,
    pub same_sign: bool,
}

impl SignedCombination {
    /// Consecutive terms grouped two by two; an odd trailing term is dropped.
    pub fn pairs(&self) -> Vec<CoupledPair> {
        self.terms
            .chunks_exact(2)
            .map(|p| CoupledPair {
                a: p[0].0,
                b: p[1].0,
                same_sign: p[0].1 == p[1].1,
            })
            .collect()
    }
}

impl fmt::Display for SignedCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(idx, s)) in self.terms.iter().enumerate() {
            let op = match (i, s < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{op}v{idx}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct BranchCoupling {
    pub m: i64,
    pub constant_kind: ConstantKind,
    pub destination: Destination,
    pub rows: Vec<SignedCombination>,
}

pub fn coupled_samples<T>(plan: &FftPlan<T>) -> Vec<BranchCoupling> {
    plan.branches()
        .iter()
        .map(|b| BranchCoupling {
            m: b.m,
            constant_kind: b.constant_kind,
            destination: b.destination,
            rows: b
                .preadd
                .row_iter()
                .map(|row| SignedCombination {
                    terms: row
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(i, v)| (i, if *v > Rational::zero() { 1 } else { -1 }))
                        .collect(),
                })
                .collect(),
        })
        .collect()
}
