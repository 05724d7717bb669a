//! Exponent matrix, residue classes and the Gaussian-integer class matrices.
//!
//! For `4 | N` the exponents `0..N` split into `N/4` classes
//! `C_m = { x : 4x ≡ 4m (mod N) } = { m + kN/4 mod N : k = 0..3 }`.
//! Every DFT entry `W^l` with `l ∈ C_m` equals `W^m · (-j)^k`, so the DFT
//! matrix is `Σ_m M_m W^m` where `M_m` only holds the free coefficients
//! `1, -j, -1, j`.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{rref, Matrix};
use crate::scalar::Real;
use crate::Rational;

pub(crate) fn check_blocklength(n: usize) -> Result<()> {
    if n >= 4 && n % 4 == 0 {
        Ok(())
    } else {
        Err(Error::UnsupportedBlocklength(n))
    }
}

/// `kn mod N` for `k, n ∈ [0, N)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExponentMatrix {
    n: usize,
    entries: Matrix<usize>,
}

impl ExponentMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, n: usize) -> usize {
        *self.entries.get(k, n)
    }

    pub fn row(&self, k: usize) -> &[usize] {
        self.entries.row(k)
    }

    pub fn entries(&self) -> &Matrix<usize> {
        &self.entries
    }

    /// Kronecker indicator of the cells equal to `l`.
    pub fn indicator(&self, l: usize) -> Matrix<i8> {
        self.entries.map(|&e| i8::from(e == l))
    }
}

pub fn exponent_matrix(n: usize) -> Result<ExponentMatrix> {
    check_blocklength(n)?;
    Ok(ExponentMatrix {
        n,
        entries: Matrix::from_fn(n, n, |k, c| (k * c) % n),
    })
}

/// Class indices in ascending order.
///
/// `N ≡ 4 (mod 8)` gives the symmetric range `-(N/4-1)/2 ..= (N/4-1)/2`.
/// When `8 | N` the range is `-(N/8-1) ..= N/8`; the top index `N/8` has no
/// negative partner and is the asymmetric class.
pub fn class_indices(n: usize) -> Result<Vec<i64>> {
    check_blocklength(n)?;
    let n = n as i64;
    let range = if n % 8 == 4 {
        let h = (n / 4 - 1) / 2;
        -h..=h
    } else {
        -(n / 8 - 1)..=n / 8
    };
    Ok(range.collect())
}

/// Index of the asymmetric class, present only when `8 | N`.
pub fn asymmetric_index(n: usize) -> Option<i64> {
    (n >= 8 && n % 8 == 0).then_some((n / 8) as i64)
}

fn ensure_index(n: usize, m: i64) -> Result<()> {
    if class_indices(n)?.contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidClassIndex { n, m })
    }
}

/// The free eigenvalue factors `(-j)^k`, `k = 0..3`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Eigenvalue {
    One,
    NegJ,
    NegOne,
    J,
}

impl Eigenvalue {
    pub const ALL: [Eigenvalue; 4] = [Eigenvalue::One, Eigenvalue::NegJ, Eigenvalue::NegOne, Eigenvalue::J];

    /// `(-j)^k`.
    pub fn from_quarter_turns(k: usize) -> Self {
        Self::ALL[k % 4]
    }

    /// `(re, im)` parts.
    pub fn parts(self) -> (i8, i8) {
        match self {
            Eigenvalue::One => (1, 0),
            Eigenvalue::NegJ => (0, -1),
            Eigenvalue::NegOne => (-1, 0),
            Eigenvalue::J => (0, 1),
        }
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        let (re, im) = self.parts();
        Complex::new(T::from_f64_lossy(re as f64), T::from_f64_lossy(im as f64))
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eigenvalue::One => "1",
            Eigenvalue::NegJ => "-j",
            Eigenvalue::NegOne => "-1",
            Eigenvalue::J => "j",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResidueClass {
    pub m: i64,
    /// `(m + kN/4) mod N` for `k = 0..3`, in that order; member `k` carries
    /// the coefficient `(-j)^k`.
    pub members: [usize; 4],
}

impl ResidueClass {
    pub fn contains(&self, l: usize) -> bool {
        self.members.contains(&l)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (usize, Eigenvalue)> + '_ {
        self.members
            .iter()
            .enumerate()
            .map(|(k, &l)| (l, Eigenvalue::from_quarter_turns(k)))
    }
}

pub fn residue_class(n: usize, m: i64) -> Result<ResidueClass> {
    ensure_index(n, m)?;
    let q = (n / 4) as i64;
    let nn = n as i64;
    let members = [0i64, 1, 2, 3].map(|k| (m + k * q).rem_euclid(nn) as usize);
    Ok(ResidueClass { m, members })
}

/// `M_m` split into real and imaginary integer parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassMatrix {
    pub m: i64,
    pub re: Matrix<i8>,
    pub im: Matrix<i8>,
}

impl ClassMatrix {
    /// `(re, im)` at a cell.
    pub fn at(&self, k: usize, n: usize) -> (i8, i8) {
        (*self.re.get(k, n), *self.im.get(k, n))
    }
}

pub fn class_matrix(exp: &ExponentMatrix, m: i64) -> Result<ClassMatrix> {
    let n = exp.n();
    ensure_index(n, m)?;
    let q = n / 4;
    let mut re = Matrix::zeros(n, n);
    let mut im = Matrix::zeros(n, n);
    for k in 0..n {
        for c in 0..n {
            // l - m ≡ kq (mod N) selects member k of the class
            let offset = (exp.get(k, c) as i64 - m).rem_euclid(n as i64) as usize;
            if offset % q == 0 {
                let (r, i) = Eigenvalue::from_quarter_turns(offset / q).parts();
                re.set(k, c, r);
                im.set(k, c, i);
            }
        }
    }
    Ok(ClassMatrix { m, re, im })
}

/// All class matrices of one blocklength.
#[derive(Clone, Debug)]
pub struct ClassDecomposition {
    n: usize,
    exponents: ExponentMatrix,
    indices: Vec<i64>,
    matrices: Vec<ClassMatrix>,
}

impl ClassDecomposition {
    pub fn new(n: usize) -> Result<Self> {
        let exponents = exponent_matrix(n)?;
        let indices = class_indices(n)?;
        let matrices = indices
            .iter()
            .map(|&m| class_matrix(&exponents, m))
            .collect::<Result<_>>()?;
        Ok(ClassDecomposition {
            n,
            exponents,
            indices,
            matrices,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of Laurent coefficients, `N/4`.
    pub fn genus(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn exponents(&self) -> &ExponentMatrix {
        &self.exponents
    }

    pub fn matrices(&self) -> &[ClassMatrix] {
        &self.matrices
    }

    pub fn get(&self, m: i64) -> Option<&ClassMatrix> {
        self.indices
            .iter()
            .position(|&i| i == m)
            .map(|p| &self.matrices[p])
    }

    pub fn class(&self, m: i64) -> Result<ResidueClass> {
        residue_class(self.n, m)
    }

    pub fn asymmetric_index(&self) -> Option<i64> {
        asymmetric_index(self.n)
    }

    /// Positive indices paired with a negative partner.
    pub fn symmetric_positive(&self) -> impl Iterator<Item = i64> + '_ {
        let asym = self.asymmetric_index();
        self.indices
            .iter()
            .copied()
            .filter(move |&m| m > 0 && Some(m) != asym)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub n: usize,
    pub holds: bool,
    pub class_sizes: Vec<(i64, usize)>,
    /// Exponents claimed by more than one class.
    pub overlaps: Vec<usize>,
    /// Exponents claimed by no class.
    pub missing: Vec<usize>,
}

pub fn verify_partition(n: usize) -> Result<PartitionReport> {
    let mut owners = vec![0usize; n.max(1)];
    let mut class_sizes = Vec::new();
    let mut in_range = true;
    for m in class_indices(n)? {
        let class = residue_class(n, m)?;
        let mut distinct = class.members.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        class_sizes.push((m, distinct.len()));
        for l in distinct {
            if l < n {
                owners[l] += 1;
            } else {
                in_range = false;
            }
        }
    }
    let overlaps: Vec<usize> = (0..n).filter(|&l| owners[l] > 1).collect();
    let missing: Vec<usize> = (0..n).filter(|&l| owners[l] == 0).collect();
    let holds = in_range
        && overlaps.is_empty()
        && missing.is_empty()
        && class_sizes.iter().all(|&(_, s)| s == 4);
    Ok(PartitionReport {
        n,
        holds,
        class_sizes,
        overlaps,
        missing,
    })
}

/// `Σ_m (Re M_m + j Im M_m) W^m` with `W = exp(-2πj/N)`.
pub fn reconstruct_dft<T: Real>(dec: &ClassDecomposition) -> Matrix<Complex<T>> {
    let n = dec.n();
    let mut out = Matrix::from_fn(n, n, |_, _| Complex::new(T::zero(), T::zero()));
    for cm in dec.matrices() {
        let angle = -2.0 * std::f64::consts::PI * cm.m as f64 / n as f64;
        let w = Complex::new(T::from_f64_lossy(angle.cos()), T::from_f64_lossy(angle.sin()));
        for k in 0..n {
            for c in 0..n {
                let (re, im) = cm.at(k, c);
                if re != 0 || im != 0 {
                    let coef = Complex::new(T::from_f64_lossy(re as f64), T::from_f64_lossy(im as f64));
                    let prev = *out.get(k, c);
                    out.set(k, c, prev + coef * w);
                }
            }
        }
    }
    out
}

/// Whether `rref(Im M_{-m}) = rref(Im M_m)` and likewise for the real parts.
/// Returns `(re_agree, im_agree)`.
pub fn conjugate_rref_agreement(dec: &ClassDecomposition, m: i64) -> Result<(bool, bool)> {
    let invalid = || Error::InvalidClassIndex { n: dec.n(), m };
    let pos = dec.get(m).ok_or_else(invalid)?;
    let neg = dec.get(-m).ok_or_else(invalid)?;
    let same = |a: &Matrix<i8>, b: &Matrix<i8>| rref(&a.to_exact::<Rational>()).rref == rref(&b.to_exact::<Rational>()).rref;
    Ok((same(&pos.re, &neg.re), same(&pos.im, &neg.im)))
}
