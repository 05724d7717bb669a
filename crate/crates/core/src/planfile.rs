//! JSON plan documents.
//!
//! Matrices are stored as sparse `(row, col, "p/q")` triplets sorted
//! row-major, with explicit dimensions. Branch constants are stored as
//! shortest round-trip decimals, so a reloaded plan executes bit for bit like
//! the one it was exported from.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::plan::{AdditiveStage, ConstantKind, Destination, FftPlan, MultiplicativeBranch, Sign};
use crate::scalar::{ExactScalar, Real};
use crate::Rational;

pub const FORMAT: &str = "laurent-fft-plan";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub triplets: Vec<(usize, usize, String)>,
}

impl SparseMatrix {
    fn from_exact<E: ExactScalar>(m: &Matrix<E>) -> Self {
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            triplets: m
                .triplets()
                .map(|(r, c, v)| (r, c, v.to_ratio_string()))
                .collect(),
        }
    }

    fn to_exact<E: ExactScalar>(&self) -> Result<Matrix<E>> {
        let mut m = Matrix::<E>::zeros(self.rows, self.cols);
        let mut last = None;
        for (r, c, v) in &self.triplets {
            if *r >= self.rows || *c >= self.cols {
                return Err(Error::PlanFormat(format!(
                    "triplet ({r}, {c}) outside {}x{}",
                    self.rows, self.cols
                )));
            }
            if last.is_some_and(|prev| prev >= (*r, *c)) {
                return Err(Error::PlanFormat("triplets must be sorted row-major without repeats".into()));
            }
            last = Some((*r, *c));
            let value = E::parse_ratio(v).ok_or_else(|| Error::PlanFormat(format!("bad rational {v:?}")))?;
            m.set(*r, *c, value);
        }
        Ok(m)
    }

    fn to_small_int(&self) -> Result<Matrix<i8>> {
        let exact = self.to_exact::<Rational>()?;
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (r, c, v) in exact.triplets() {
            if !v.is_integer() || v.numer().abs() > 1 {
                return Err(Error::PlanFormat(format!("additive entry {v} is not in {{-1, 0, 1}}")));
            }
            out.set(r, c, *v.numer() as i8);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdditiveDocument {
    pub re: SparseMatrix,
    pub im: SparseMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchDocument {
    pub m: i64,
    pub constant_kind: ConstantKind,
    pub constant_value: f64,
    #[serde(rename = "R")]
    pub preadd: SparseMatrix,
    #[serde(rename = "C")]
    pub postadd: SparseMatrix,
    pub destination: Destination,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanDocument {
    pub format: String,
    pub version: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub mult_count: usize,
    pub add_count: usize,
    pub additive: AdditiveDocument,
    pub branches: Vec<BranchDocument>,
}

impl PlanDocument {
    pub fn from_plan<T: Real>(plan: &FftPlan<T>) -> Self {
        let additive = plan.additive();
        PlanDocument {
            format: FORMAT.to_string(),
            version: VERSION,
            n: plan.n(),
            mult_count: plan.mult_count(),
            add_count: plan.add_count(),
            additive: AdditiveDocument {
                re: SparseMatrix::from_exact(&additive.re_m0.to_exact::<Rational>()),
                im: SparseMatrix::from_exact(&additive.im_m0.to_exact::<Rational>()),
            },
            branches: plan
                .branches()
                .iter()
                .map(|b| BranchDocument {
                    m: b.m,
                    constant_kind: b.constant_kind,
                    constant_value: b.constant_value.to_f64_lossy(),
                    preadd: SparseMatrix::from_exact(&b.preadd),
                    postadd: SparseMatrix::from_exact(&b.postadd),
                    destination: b.destination,
                    sign: b.sign.as_i8(),
                })
                .collect(),
        }
    }

    /// Rebuilds the plan, checking the stored counts and constants.
    pub fn to_plan<T: Real>(&self) -> Result<FftPlan<T>> {
        if self.format != FORMAT || self.version != VERSION {
            return Err(Error::PlanFormat(format!(
                "expected {FORMAT} v{VERSION}, found {} v{}",
                self.format, self.version
            )));
        }
        let additive = AdditiveStage {
            re_m0: self.additive.re.to_small_int()?,
            im_m0: self.additive.im.to_small_int()?,
        };
        let branches = self
            .branches
            .iter()
            .map(|b| {
                let expected = b.constant_kind.value(b.m, self.n);
                if (b.constant_value - expected).abs() > 1e-12 {
                    return Err(Error::PlanFormat(format!(
                        "constant {} does not match {} for m={}",
                        b.constant_value, b.constant_kind, b.m
                    )));
                }
                let sign = Sign::from_i8(b.sign)
                    .ok_or_else(|| Error::PlanFormat(format!("sign must be +1 or -1, got {}", b.sign)))?;
                MultiplicativeBranch::new(
                    b.m,
                    b.constant_kind,
                    T::from_f64_lossy(b.constant_value),
                    b.preadd.to_exact()?,
                    b.postadd.to_exact()?,
                    b.destination,
                    sign,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let plan = FftPlan::from_parts(self.n, additive, branches)?;
        if plan.mult_count() != self.mult_count || plan.add_count() != self.add_count {
            return Err(Error::PlanFormat(format!(
                "stored counts ({}, {}) disagree with plan ({}, {})",
                self.mult_count,
                self.add_count,
                plan.mult_count(),
                plan.add_count()
            )));
        }
        Ok(plan)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn save_plan<T: Real>(plan: &FftPlan<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut text = PlanDocument::from_plan(plan).to_json()?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn load_plan<T: Real>(path: impl AsRef<Path>) -> Result<FftPlan<T>> {
    let text = fs::read_to_string(path)?;
    PlanDocument::from_json(&text)?.to_plan()
}
