//! The divisor-with-character component C3, the Brylinski-Deligne complex,
//! and extraction of the Killing form.
//!
//! All half-integers are stored doubled. The weight lattice X is identified
//! with Z^rank in the fundamental-weight basis, the coroot lattice with Z^rank
//! in the simple-coroot basis, and the middle group X_sc (x) X with
//! rank-by-rank matrices: row k is the weight attached to the codimension-one
//! cell indexed by the k-th simple coroot.

use crate::root_system::{reflect, CartanData, Lattice, WeylWord};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// One entry of C3: the Bruhat divisor indexed by `k`, the power `d_k`, and
/// the character exponents over the fundamental weights (doubled).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C3Entry {
    pub k: usize,
    pub power: i64,
    /// doubled exponents: -2 at position k, C_kj at j != k
    pub char_exp2: Vec<i64>,
}

/// The component C3 as a list of (Bruhat divisor, character) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorFunctionSum {
    pub entries: Vec<C3Entry>,
}

/// For each k: power d_k, character exponents -1 on weight k and C_kj / 2 on
/// weight j != k.
pub fn c3_element(cd: &CartanData) -> DivisorFunctionSum {
    let r = cd.rank;
    let entries = (0..r)
        .map(|k| {
            let char_exp2 = (0..r)
                .map(|j| if j == k { -2 } else { cd.cartan[k][j] })
                .collect();
            C3Entry {
                k,
                power: cd.symmetrizers[k],
                char_exp2,
            }
        })
        .collect();
    DivisorFunctionSum { entries }
}

impl DivisorFunctionSum {
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let exps: Vec<String> = e
                .char_exp2
                .iter()
                .map(|&x| {
                    if x % 2 == 0 {
                        format!("{}", x / 2)
                    } else {
                        format!("{x}/2")
                    }
                })
                .collect();
            let _ = writeln!(
                out,
                "divisor B(s{} w0) power={} char=[{}]",
                e.k + 1,
                e.power,
                exps.join(", ")
            );
        }
        out
    }
}

/// An element of the wedge square of the weight lattice: antisymmetric
/// integer matrix over the fundamental-weight basis.
pub type Lambda2X = Vec<Vec<i64>>;

/// An element of X_sc (x) X, doubled: `m2[k][j]` is twice the coefficient of
/// the tensor (dual of alpha_k^vee) (x) Lambda_j.
pub type MiddleElement2 = Vec<Vec<i64>>;

/// An element of the top group, indexed by codimension-two Bruhat cells
/// `w0 s_i s_j`; keys are action matrices of the group elements so that cells
/// with commuting reflections merge. Values doubled.
pub type TopElement2 = BTreeMap<Vec<i64>, i64>;

/// First differential: `x1 ^ x2 -> sum_i (<x1, a_i^vee> (w0 s_i, x2)
/// - <x2, a_i^vee> (w0 s_i, x1))`. On the antisymmetric matrix form this
/// sends L to the matrix with row i equal to `sum_j L_ij Lambda_j`.
pub fn bd_d1(l: &Lambda2X) -> MiddleElement2 {
    let r = l.len();
    let mut m2 = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            if i != j {
                m2[i][j] = 2 * l[i][j];
            }
        }
    }
    m2
}

/// Second differential: the component of `d2(C)` at the cell `w0 s_i s_j` is
/// `C(alpha_i^vee, alpha_j^vee) + C(alpha_j^vee, s_j(alpha_i^vee))`.
pub fn bd_d2(cd: &CartanData, m2: &MiddleElement2) -> Result<TopElement2> {
    let r = cd.rank;
    let m = cd.num_positive_roots;
    let w0 = crate::root_system::longest_word(cd)?;
    let mut out: TopElement2 = BTreeMap::new();
    let pair = |x2: &[i64], y: &[i64]| -> i64 { x2.iter().zip(y).map(|(a, b)| a * b).sum() };
    let mut cell_key = |a: usize, b: usize| -> Result<Vec<i64>> {
        let mut letters = w0.letters.clone();
        letters.push(a);
        letters.push(b);
        let cell = WeylWord::new(letters);
        if crate::root_system::inversion_count(cd, &cell) != m - 2 {
            return Err(Error::InvalidInput(
                "codimension-two cell is not reduced".into(),
            ));
        }
        Ok(crate::root_system::action_matrix(cd, &cell))
    };
    for j in 0..r {
        let xj = &m2[j];
        for i in 0..r {
            if i == j {
                continue;
            }
            let mut ei = vec![0i64; r];
            ei[i] = 1;
            let sj_ai = reflect(cd, j, &ei, Lattice::Coroot);
            // (w0 s_i s_j, <x_j, s_j(alpha_i^vee)>)
            *out.entry(cell_key(i, j)?).or_insert(0) += pair(xj, &sj_ai);
            // (w0 s_j s_i, <x_j, alpha_i^vee>)
            *out.entry(cell_key(j, i)?).or_insert(0) += pair(xj, &ei);
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// The image of C3 in the middle group: the matrix
/// `sum_k d_k Lambda_k (x) Lambda_k + sum_{i != k} (d_k C_ki / 2)
/// Lambda_k (x) Lambda_i`. The passage flips the sign of the divisor's own
/// character exponent (the two Bruhat conventions put the torus on opposite
/// sides of the lift) and relabels by the star involution, under which the
/// Cartan data is invariant.
pub fn c3_to_bd(c3: &DivisorFunctionSum) -> MiddleElement2 {
    let r = c3.entries.len();
    let mut m2 = vec![vec![0i64; r]; r];
    for e in &c3.entries {
        for j in 0..r {
            let raw = e.power * e.char_exp2[j];
            m2[e.k][j] = if j == e.k { -raw } else { raw };
        }
    }
    m2
}

/// The symmetric bilinear and quadratic data extracted from a middle element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticFormData {
    /// doubled symmetric matrix: bilinear2[i][j] = 2 B(a_i^vee, a_j^vee)
    pub bilinear2: Vec<Vec<i64>>,
    /// Q(alpha_i^vee)
    pub quadratic: Vec<i64>,
}

pub fn quadratic_form(m2: &MiddleElement2) -> Result<QuadraticFormData> {
    let r = m2.len();
    let mut bilinear2 = vec![vec![0i64; r]; r];
    let mut quadratic = vec![0i64; r];
    for i in 0..r {
        for j in 0..r {
            bilinear2[i][j] = m2[i][j] + m2[j][i];
        }
        if m2[i][i] % 2 != 0 {
            return Err(Error::HalfIntegerResidue("Q(alpha_i^vee)".into()));
        }
        quadratic[i] = m2[i][i] / 2;
        if bilinear2[i][i] != 4 * quadratic[i] {
            return Err(Error::InvalidInput("B_ii != 2 Q_i".into()));
        }
    }
    Ok(QuadraticFormData {
        bilinear2,
        quadratic,
    })
}

/// Evaluate `2 Q(y)` for a coroot-coordinate vector.
pub fn q2_value(m2: &MiddleElement2, y: &[i64]) -> i64 {
    let r = m2.len();
    let mut acc = 0;
    for i in 0..r {
        for j in 0..r {
            acc += m2[i][j] * y[i] * y[j];
        }
    }
    acc
}

/// Report of the Killing-form verification for one type.
#[derive(Debug, Clone)]
pub struct KillingReport {
    pub series_rank: String,
    /// d2 of the image of C3 vanishes
    pub closed: bool,
    /// the quadratic form is invariant under all simple reflections
    pub w_invariant: bool,
    /// Q(alpha_i^vee) = 1 whenever d_i = 1 (short coroots)
    pub short_normalized: bool,
    pub quadratic: Vec<i64>,
}

impl KillingReport {
    pub fn pass(&self) -> bool {
        self.closed && self.w_invariant && self.short_normalized
    }
}

impl std::fmt::Display for KillingReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: closed={} W-invariant={} Q(short)=1:{} Q={:?}",
            self.series_rank, self.closed, self.w_invariant, self.short_normalized, self.quadratic
        )
    }
}

/// Checks (a) closedness of the C3 image under the second differential,
/// (b) W-invariance of the extracted quadratic form on random coroot
/// vectors, (c) the short-coroot normalization Q = 1.
pub fn killing_verification(
    cd: &CartanData,
    rng: &mut crate::sampling::ChaCha8Rng,
) -> Result<KillingReport> {
    use rand::Rng;
    let c3 = c3_element(cd);
    let m2 = c3_to_bd(&c3);
    let closed = bd_d2(cd, &m2)?.is_empty();
    let qf = quadratic_form(&m2)?;
    let mut w_invariant = true;
    for _ in 0..40 {
        let y: Vec<i64> = (0..cd.rank).map(|_| rng.gen_range(-6..=6)).collect();
        let q = q2_value(&m2, &y);
        for k in 0..cd.rank {
            let sy = reflect(cd, k, &y, Lattice::Coroot);
            if q2_value(&m2, &sy) != q {
                w_invariant = false;
            }
        }
    }
    let short_normalized = (0..cd.rank)
        .filter(|&i| cd.symmetrizers[i] == 1)
        .all(|i| qf.quadratic[i] == 1);
    Ok(KillingReport {
        series_rank: format!("{}{}", cd.series, cd.rank),
        closed,
        w_invariant,
        short_normalized,
        quadratic: qf.quadratic,
    })
}

/// The valuation differential of C3 vanishes; equivalent to the closedness
/// clause of [`killing_verification`].
pub fn div_c3_check(cd: &CartanData) -> Result<bool> {
    let c3 = c3_element(cd);
    let m2 = c3_to_bd(&c3);
    Ok(bd_d2(cd, &m2)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{cartan_data, Series};
    use crate::sampling::rng_from_seed;
    use rand::Rng;

    #[test]
    fn c3_exponent_tables() {
        let a1 = cartan_data(Series::A, 1).unwrap();
        let c3 = c3_element(&a1);
        assert_eq!(c3.entries.len(), 1);
        assert_eq!(c3.entries[0].power, 1);
        assert_eq!(c3.entries[0].char_exp2, vec![-2]);

        let a2 = cartan_data(Series::A, 2).unwrap();
        let c3 = c3_element(&a2);
        assert_eq!(c3.entries[0].char_exp2, vec![-2, -1]); // (-1, -1/2)
        assert_eq!(c3.entries[1].char_exp2, vec![-1, -2]);

        let b3 = cartan_data(Series::B, 3).unwrap();
        let c3 = c3_element(&b3);
        assert_eq!(c3.entries[0].power, 2);
        assert_eq!(c3.entries[0].char_exp2, vec![-2, -1, 0]);
    }

    #[test]
    fn kf_matrices() {
        let a1 = cartan_data(Series::A, 1).unwrap();
        assert_eq!(c3_to_bd(&c3_element(&a1)), vec![vec![2]]); // [1] doubled

        let a2 = cartan_data(Series::A, 2).unwrap();
        // [[1, -1/2], [-1/2, 1]] doubled
        assert_eq!(c3_to_bd(&c3_element(&a2)), vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn kf_matrix_is_symmetric_for_all_types() {
        for (series, rank) in [
            (Series::A, 3),
            (Series::B, 2),
            (Series::B, 3),
            (Series::C, 3),
            (Series::D, 4),
            (Series::G, 2),
            (Series::F, 4),
        ] {
            let cd = cartan_data(series, rank).unwrap();
            let m2 = c3_to_bd(&c3_element(&cd));
            for i in 0..rank {
                for j in 0..rank {
                    assert_eq!(m2[i][j], m2[j][i], "{series}{rank}");
                }
            }
        }
    }

    #[test]
    fn d1_of_diagonal_wedges_vanishes() {
        // x ^ x = 0 is the zero antisymmetric matrix
        let l = vec![vec![0i64; 2]; 2];
        assert_eq!(bd_d1(&l), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn a2_d1_of_the_generator() {
        // Lambda_1 ^ Lambda_2 -> rows (Lambda_2, -Lambda_1)
        let l = vec![vec![0, 1], vec![-1, 0]];
        assert_eq!(bd_d1(&l), vec![vec![0, 2], vec![-2, 0]]);
    }

    #[test]
    fn d2_after_d1_vanishes() {
        let mut rng = rng_from_seed(31);
        for (series, rank) in [
            (Series::A, 2),
            (Series::A, 3),
            (Series::B, 2),
            (Series::B, 3),
            (Series::C, 3),
            (Series::D, 4),
            (Series::G, 2),
        ] {
            let cd = cartan_data(series, rank).unwrap();
            for _ in 0..10 {
                let mut l = vec![vec![0i64; rank]; rank];
                for i in 0..rank {
                    for j in (i + 1)..rank {
                        let v = rng.gen_range(-5..=5);
                        l[i][j] = v;
                        l[j][i] = -v;
                    }
                }
                let middle = bd_d1(&l);
                let top = bd_d2(&cd, &middle).unwrap();
                assert!(top.is_empty(), "{series}{rank}: d2 d1 != 0");
            }
        }
    }

    #[test]
    fn nonzero_middle_elements_have_nonzero_differential() {
        // the identity matrix in the weight basis is not W-invariant data
        let a2 = cartan_data(Series::A, 2).unwrap();
        let m2 = vec![vec![2, 0], vec![0, 0]];
        let top = bd_d2(&a2, &m2).unwrap();
        assert!(!top.is_empty());
    }

    #[test]
    fn killing_reports_for_required_types() {
        let mut rng = rng_from_seed(37);
        for (series, rank) in [
            (Series::A, 1),
            (Series::A, 2),
            (Series::A, 3),
            (Series::B, 2),
            (Series::B, 3),
            (Series::C, 3),
            (Series::D, 4),
            (Series::F, 4),
            (Series::G, 2),
        ] {
            let cd = cartan_data(series, rank).unwrap();
            let report = killing_verification(&cd, &mut rng).unwrap();
            assert!(report.pass(), "{report}");
            assert!(div_c3_check(&cd).unwrap());
        }
    }

    #[test]
    fn long_coroots_get_the_multiplier() {
        let mut rng = rng_from_seed(41);
        let b3 = cartan_data(Series::B, 3).unwrap();
        let report = killing_verification(&b3, &mut rng).unwrap();
        assert_eq!(report.quadratic, vec![2, 1, 1]);
        let g2 = cartan_data(Series::G, 2).unwrap();
        let report = killing_verification(&g2, &mut rng).unwrap();
        assert_eq!(report.quadratic, vec![3, 1]);
    }
}
