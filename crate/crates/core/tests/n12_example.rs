//! The length-12 worked example, with the published matrices typed in by hand.

use laurent_fft::classes::{class_indices, exponent_matrix, residue_class, ClassDecomposition};
use laurent_fft::linalg::{rank, rank_factor, rref};
use laurent_fft::plan::{coupled_samples, Destination};
use laurent_fft::{FftPlan64, IntMatrix, Rational, RationalMatrix};

fn int_rows(text: &str) -> IntMatrix {
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(|t| t.parse::<i8>().unwrap()).collect())
        .collect();
    IntMatrix::from_rows(rows).unwrap()
}

fn rat_rows(text: &str) -> RationalMatrix {
    int_rows(text).to_exact::<Rational>()
}

fn ex(m: &IntMatrix) -> RationalMatrix {
    m.to_exact::<Rational>()
}

const RE_M0: &str = "
 1  1  1  1  1  1  1  1  1  1  1  1
 1  0  0  0  0  0 -1  0  0  0  0  0
 1  0  0 -1  0  0  1  0  0 -1  0  0
 1  0 -1  0  1  0 -1  0  1  0 -1  0
 1  0  0  1  0  0  1  0  0  1  0  0
 1  0  0  0  0  0 -1  0  0  0  0  0
 1 -1  1 -1  1 -1  1 -1  1 -1  1 -1
 1  0  0  0  0  0 -1  0  0  0  0  0
 1  0  0  1  0  0  1  0  0  1  0  0
 1  0 -1  0  1  0 -1  0  1  0 -1  0
 1  0  0 -1  0  0  1  0  0 -1  0  0
 1  0  0  0  0  0 -1  0  0  0  0  0";

const IM_M0: &str = "
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0 -1  0  0  0  0  0  1  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0 -1  0  1  0 -1  0  1  0 -1  0  1
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0 -1  0  0  0  0  0  1  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  1  0  0  0  0  0 -1  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  1  0 -1  0  1  0 -1  0  1  0 -1
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  1  0  0  0  0  0 -1  0  0";

const RE_M1: &str = "
 0  0  0  0  0  0  0  0  0  0  0  0
 0  1  0  0  0  0  0 -1  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  1  0  0  0  0  0 -1
 0  0  0  0  0  0  0  0  0  0  0  0
 0 -1  0  0  0  0  0  1  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0 -1  0  0  0  0  0  1";

const IM_M1: &str = "
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0 -1  0  0  0  0  0  1  0
 0  0 -1  0  0  1  0  0 -1  0  0  1
 0  0  0  0  0  0  0  0  0  0  0  0
 0 -1  0  0 -1  0  0 -1  0  0 -1  0
 0  0  1  0  0  0  0  0 -1  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0 -1  0  0  0  0  0  1  0
 0  0 -1  0  0 -1  0  0 -1  0  0 -1
 0  0  0  0  0  0  0  0  0  0  0  0
 0  1  0  0 -1  0  0  1  0  0 -1  0
 0  0  1  0  0  0  0  0 -1  0  0  0";

const RE_MM1: &str = "
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0 -1  0  0  0  0  0  1
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0 -1  0  0  0  0  0  1  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  1  0  0  0  0  0 -1
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  1  0  0  0  0  0 -1  0  0  0  0";

const IM_MM1: &str = "
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0 -1  0  0  0  0  0  1  0  0  0
 0 -1  0  0  1  0  0 -1  0  0  1  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  1  0  0  1  0  0  1  0  0  1
 0  0  0  0  1  0  0  0  0  0 -1  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0 -1  0  0  0  0  0  1  0  0  0
 0  1  0  0  1  0  0  1  0  0  1  0
 0  0  0  0  0  0  0  0  0  0  0  0
 0  0  1  0  0 -1  0  0  1  0  0 -1
 0  0  0  0  1  0  0  0  0  0 -1  0";

fn dec() -> ClassDecomposition {
    ClassDecomposition::new(12).unwrap()
}

#[test]
fn exponent_matrix_rows() {
    let exp = exponent_matrix(12).unwrap();
    assert_eq!(exp.row(5), &[0, 5, 10, 3, 8, 1, 6, 11, 4, 9, 2, 7]);
    assert_eq!(exp.row(7), &[0, 7, 2, 9, 4, 11, 6, 1, 8, 3, 10, 5]);
    assert_eq!(exp.row(11), &[0, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1]);
}

#[test]
fn three_classes() {
    assert_eq!(class_indices(12).unwrap(), vec![-1, 0, 1]);
    assert_eq!(residue_class(12, 0).unwrap().members, [0, 3, 6, 9]);
    assert_eq!(residue_class(12, 1).unwrap().members, [1, 4, 7, 10]);
    assert_eq!(residue_class(12, -1).unwrap().members, [11, 2, 5, 8]);
}

#[test]
fn class_matrices_match_published_displays() {
    let d = dec();
    let m0 = d.get(0).unwrap();
    let m1 = d.get(1).unwrap();
    let mm1 = d.get(-1).unwrap();
    assert_eq!(m0.re, int_rows(RE_M0));
    assert_eq!(m0.im, int_rows(IM_M0));
    assert_eq!(m1.re, int_rows(RE_M1));
    assert_eq!(m1.im, int_rows(IM_M1));
    assert_eq!(mm1.re, int_rows(RE_MM1));
    assert_eq!(mm1.im, int_rows(IM_MM1));
}

#[test]
fn published_ranks() {
    assert_eq!(rank(&rat_rows(RE_M0)), 6);
    assert_eq!(rank(&rat_rows(IM_M0)), 2);
    assert_eq!(rank(&rat_rows(RE_M1)), 2);
    assert_eq!(rank(&rat_rows(IM_M1)), 6);
    assert_eq!(rank(&rat_rows(RE_MM1)), 2);
    assert_eq!(rank(&rat_rows(IM_MM1)), 6);
}

#[test]
fn imaginary_m0_reduction() {
    let want = rat_rows(
        "0 1 0 0 0 1 0 -1 0 0 0 -1
         0 0 0 1 0 0 0 0 0 -1 0 0",
    );
    assert_eq!(rref(&rat_rows(IM_M0)).rref, want);
}

// The published display of this reduction is not a valid reduced form of the
// matrix above. The form below was rechecked with a computer algebra system.
#[test]
fn real_m0_reduction() {
    let want = rat_rows(
        "1 0 0 0 0 0 0 0 0 0 0 0
         0 1 0 0 0 1 0 1 0 0 0 1
         0 0 1 0 0 0 0 0 0 0 1 0
         0 0 0 1 0 0 0 0 0 1 0 0
         0 0 0 0 1 0 0 0 1 0 0 0
         0 0 0 0 0 0 1 0 0 0 0 0",
    );
    let r = rref(&rat_rows(RE_M0));
    assert_eq!(r.rref, want);
    assert_eq!(r.pivot_cols, vec![0, 1, 2, 3, 4, 6]);
}

#[test]
fn real_m1_reduction_shared_by_both_signs() {
    let li1 = rat_rows(
        "0 1 0 0 0 0 0 -1 0 0 0 0
         0 0 0 0 0 1 0 0 0 0 0 -1",
    );
    assert_eq!(rref(&rat_rows(RE_M1)).rref, li1);
    assert_eq!(rref(&rat_rows(RE_MM1)).rref, li1);
}

// The published seven-row display cannot be the reduction of a rank-6 matrix;
// the true form has six rows with pivots at 1, 2, 4, 5, 8 and 10.
#[test]
fn imaginary_m1_reduction_shared_by_both_signs() {
    let a = rref(&rat_rows(IM_M1));
    let b = rref(&rat_rows(IM_MM1));
    assert_eq!(a.rank, 6);
    assert_eq!(a.pivot_cols, vec![1, 2, 4, 5, 8, 10]);
    assert_eq!(a.rref, b.rref);
    assert!(a.is_signed_binary());
}

#[test]
fn preaddition_reductions() {
    let d = dec();
    let m1 = d.get(1).unwrap();
    let mm1 = d.get(-1).unwrap();

    let cases = [
        (m1.re.add(&mm1.re), "0 1 0 0 0 -1 0 -1 0 0 0 1"),
        (m1.re.sub(&mm1.re), "0 1 0 0 0 1 0 -1 0 0 0 -1"),
        (
            m1.im.sub(&mm1.im),
            "0 1 0 0 0 1 0 1 0 0 0 1
             0 0 1 0 0 0 0 0 0 0 1 0
             0 0 0 0 1 0 0 0 1 0 0 0",
        ),
        (
            m1.im.add(&mm1.im),
            "0 1 0 0 0 -1 0 1 0 0 0 -1
             0 0 1 0 0 0 0 0 0 0 -1 0
             0 0 0 0 1 0 0 0 -1 0 0 0",
        ),
    ];
    for (source, want) in cases {
        let src = ex(&source);
        let want = rat_rows(want);
        assert_eq!(rref(&src).rref, want);
        let (c, r) = rank_factor(&src).unwrap();
        assert_eq!(r, want);
        assert_eq!(c.matmul(&r).unwrap(), src);
    }
}

#[test]
fn eight_multiplications_four_per_output() {
    let plan = FftPlan64::compile(12).unwrap();
    assert_eq!(plan.mult_count(), 8);
    let real: usize = plan
        .branches()
        .iter()
        .filter(|b| b.destination == Destination::RealOut)
        .map(|b| b.rank())
        .sum();
    assert_eq!(real, 4);
}

#[test]
fn coupled_samples_listed() {
    let plan = FftPlan64::compile(12).unwrap();
    let mut seen = std::collections::BTreeMap::<(usize, usize), (bool, bool)>::new();
    for coupling in coupled_samples(&plan) {
        for row in &coupling.rows {
            for p in row.pairs() {
                let e = seen.entry((p.a, p.b)).or_default();
                if p.same_sign {
                    e.0 = true;
                } else {
                    e.1 = true;
                }
            }
        }
    }
    for pair in [(1, 5), (7, 11), (2, 10), (4, 8)] {
        assert_eq!(seen.get(&pair), Some(&(true, true)), "pair {pair:?}");
    }
}

#[test]
fn length_20_condensed_row() {
    let plan = FftPlan64::compile(20).unwrap();
    let supports: Vec<Vec<usize>> = coupled_samples(&plan)
        .into_iter()
        .flat_map(|c| c.rows)
        .map(|r| r.terms.iter().map(|&(i, _)| i).collect())
        .collect();
    assert!(supports.contains(&vec![1, 9, 11, 19]));
}
