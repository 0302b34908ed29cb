//! Exact root-system and Weyl-group machinery.
//!
//! Weights are stored as integer coordinate vectors in the fundamental-weight
//! basis, coroots in the simple-coroot basis, and roots in the simple-root
//! basis. With these choices the pairing of a weight `x` with a coroot `y` is
//! the plain dot product of coordinate vectors, and all Weyl actions are
//! integer linear algebra.

use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// Simple series letter of a finite type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            "E" => Ok(Series::E),
            "F" => Ok(Series::F),
            "G" => Ok(Series::G),
            other => Err(Error::InvalidInput(format!("unknown series {other:?}"))),
        }
    }
}

/// Root-system constants of a simple type: Cartan matrix, symmetrizers,
/// and the number of positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub series: Series,
    pub rank: usize,
    /// `cartan[i][j]` = value of the simple root `alpha_i` on the simple
    /// coroot `alpha_j^vee`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive integers with `d_i C_ij = d_j C_ji`, normalized so min = 1.
    pub symmetrizers: Vec<i64>,
    pub num_positive_roots: usize,
}

/// A word in the simple reflections, letters stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylWord {
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parse a comma-separated 1-based word such as "1,2,1".
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for part in s.split(',') {
            let n: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad word letter {part:?}")))?;
            if n == 0 {
                return Err(Error::Parse("word letters are 1-based".into()));
            }
            letters.push(n - 1);
        }
        Ok(WeylWord { letters })
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| (l + 1).to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Chains of positive roots and coroots attached to a reduced word of w0,
/// `alpha_k = s_{i_m} ... s_{i_{k+1}} alpha_{i_k}` and likewise for coroots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootChain {
    /// In simple-root coordinates.
    pub alphas: Vec<Vec<i64>>,
    /// In simple-coroot coordinates.
    pub betas: Vec<Vec<i64>>,
}

/// Which lattice a coordinate vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lattice {
    /// Fundamental-weight basis.
    Weight,
    /// Simple-coroot basis.
    Coroot,
    /// Simple-root basis.
    Root,
}

fn chain_matrix(rank: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        c[i][i] = 2;
        if i + 1 < rank {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

/// Standard Cartan matrix and symmetrizers of a valid simple type.
///
/// For the non-simply-laced B/C/G series the vertex carrying the larger
/// multiplier comes first, matching the type-B3 quiver picture with d1 = 2:
/// vertex 1 of B_n is the short simple root (long coroot).
pub fn cartan_data(series: Series, rank: usize) -> Result<CartanData> {
    let ok = match series {
        Series::A => rank >= 1,
        Series::B | Series::C => rank >= 2,
        Series::D => rank >= 4,
        Series::E => (6..=8).contains(&rank),
        Series::F => rank == 4,
        Series::G => rank == 2,
    };
    if !ok {
        return Err(Error::InvalidInput(format!(
            "invalid simple type {series}{rank}"
        )));
    }
    let cartan: Vec<Vec<i64>> = match series {
        Series::A => chain_matrix(rank),
        Series::B => {
            // short root first: C_12 = -1, C_21 = -2
            let mut c = chain_matrix(rank);
            c[1][0] = -2;
            c
        }
        Series::C => {
            // long root last: C_{n-1,n} = -1, C_{n,n-1} = -2
            let mut c = chain_matrix(rank);
            c[rank - 1][rank - 2] = -2;
            c
        }
        Series::D => {
            let mut c = chain_matrix(rank - 1);
            for row in c.iter_mut() {
                row.push(0);
            }
            c.push(vec![0; rank]);
            c[rank - 1][rank - 1] = 2;
            // fork: last node attaches to node rank-3 (0-based)
            c[rank - 1][rank - 3] = -1;
            c[rank - 3][rank - 1] = -1;
            // break the chain edge between rank-2 and rank-1 that chain_matrix
            // would have added; chain_matrix only built rank-1 nodes, so the
            // chain runs 0..rank-2 and both ends of the fork attach to rank-3.
            c
        }
        Series::E => {
            // Bourbaki: chain 1-3-4-5-...-rank with node 2 attached to node 4.
            let mut c = vec![vec![0i64; rank]; rank];
            for i in 0..rank {
                c[i][i] = 2;
            }
            let mut link = |a: usize, b: usize, c: &mut Vec<Vec<i64>>| {
                c[a][b] = -1;
                c[b][a] = -1;
            };
            link(0, 2, &mut c);
            link(2, 3, &mut c);
            link(1, 3, &mut c);
            for k in 3..rank - 1 {
                link(k, k + 1, &mut c);
            }
            c
        }
        Series::F => {
            let mut c = chain_matrix(4);
            c[1][2] = -2;
            c
        }
        Series::G => vec![vec![2, -1], vec![-3, 2]],
    };
    let symmetrizers = solve_symmetrizers(&cartan)?;
    let mut cd = CartanData {
        series,
        rank,
        cartan,
        symmetrizers,
        num_positive_roots: 0,
    };
    validate_cartan(&cd)?;
    cd.num_positive_roots = positive_roots(&cd).len();
    Ok(cd)
}

fn validate_cartan(cd: &CartanData) -> Result<()> {
    let r = cd.rank;
    for i in 0..r {
        if cd.cartan[i][i] != 2 {
            return Err(Error::InvalidInput("diagonal of Cartan matrix must be 2".into()));
        }
        for j in 0..r {
            if i != j {
                if cd.cartan[i][j] > 0 {
                    return Err(Error::InvalidInput("off-diagonal entries must be <= 0".into()));
                }
                if (cd.cartan[i][j] == 0) != (cd.cartan[j][i] == 0) {
                    return Err(Error::InvalidInput("zero pattern must be symmetric".into()));
                }
            }
            if cd.symmetrizers[i] * cd.cartan[i][j] != cd.symmetrizers[j] * cd.cartan[j][i] {
                return Err(Error::InvalidInput("symmetrizability failed".into()));
            }
        }
        if !(1..=3).contains(&cd.symmetrizers[i]) {
            return Err(Error::InvalidInput("symmetrizers must lie in 1..3".into()));
        }
    }
    Ok(())
}

/// Solve `d_i C_ij = d_j C_ji` over positive integers with min 1 by
/// propagating ratios along the Dynkin graph.
fn solve_symmetrizers(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let r = cartan.len();
    // numerator/denominator pairs
    let mut num = vec![0i64; r];
    let mut den = vec![0i64; r];
    let mut stack = vec![0usize];
    num[0] = 1;
    den[0] = 1;
    while let Some(i) = stack.pop() {
        for j in 0..r {
            if i != j && cartan[i][j] != 0 && num[j] == 0 {
                // d_j = d_i * C_ij / C_ji
                num[j] = num[i] * cartan[i][j];
                den[j] = den[i] * cartan[j][i];
                if num[j] * den[j] < 0 {
                    num[j] = -num[j];
                    den[j] = -den[j];
                }
                stack.push(j);
            }
        }
    }
    if num.iter().any(|&n| n == 0) {
        return Err(Error::InvalidInput("Dynkin diagram is not connected".into()));
    }
    let lcm_den = den.iter().fold(1i64, |a, &b| num_lcm(a, b.abs()));
    let mut d: Vec<i64> = (0..r).map(|i| num[i] * (lcm_den / den[i])).collect();
    let g = d.iter().fold(0i64, |a, &b| num_gcd(a, b.abs()));
    for x in d.iter_mut() {
        *x /= g;
    }
    let m = *d.iter().min().unwrap();
    if m != 1 {
        // content 1 guarantees min 1 for the supported types, but be safe
        if d.iter().all(|x| x % m == 0) {
            for x in d.iter_mut() {
                *x /= m;
            }
        }
    }
    Ok(d)
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

fn num_lcm(a: i64, b: i64) -> i64 {
    a / num_gcd(a, b) * b
}

/// Apply the simple reflection `s_i` to a coordinate vector in the named lattice.
pub fn reflect(cd: &CartanData, i: usize, v: &[i64], lattice: Lattice) -> Vec<i64> {
    let mut w = v.to_vec();
    match lattice {
        Lattice::Weight => {
            // x -> x - x_i * alpha_i, alpha_i = i-th row of C in weight coords
            let xi = v[i];
            for j in 0..cd.rank {
                w[j] -= xi * cd.cartan[i][j];
            }
        }
        Lattice::Coroot => {
            // y -> y - alpha_i(y) * alpha_i^vee
            let pairing: i64 = (0..cd.rank).map(|j| cd.cartan[i][j] * v[j]).sum();
            w[i] -= pairing;
        }
        Lattice::Root => {
            // c -> c - <sum c_j alpha_j, alpha_i^vee> alpha_i
            let pairing: i64 = (0..cd.rank).map(|j| cd.cartan[j][i] * v[j]).sum();
            w[i] -= pairing;
        }
    }
    w
}

/// Apply a word of simple reflections (as the operator `s_{i_1} s_{i_2} ...`,
/// rightmost letter acting first) to a coordinate vector.
pub fn weyl_apply(cd: &CartanData, word: &WeylWord, v: &[i64], lattice: Lattice) -> Vec<i64> {
    let mut w = v.to_vec();
    for &i in word.letters.iter().rev() {
        w = reflect(cd, i, &w, lattice);
    }
    w
}

/// All positive roots, in simple-root coordinates.
pub fn positive_roots(cd: &CartanData) -> Vec<Vec<i64>> {
    let r = cd.rank;
    let mut seen: Vec<Vec<i64>> = Vec::new();
    let mut frontier: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0i64; r];
            e[i] = 1;
            e
        })
        .collect();
    let mut all: std::collections::HashSet<Vec<i64>> = frontier.iter().cloned().collect();
    while let Some(root) = frontier.pop() {
        for i in 0..r {
            let img = reflect(cd, i, &root, Lattice::Root);
            if img.iter().all(|&c| c >= 0) && all.insert(img.clone()) {
                frontier.push(img);
            }
        }
        seen.push(root);
    }
    let mut v: Vec<Vec<i64>> = all.into_iter().collect();
    v.sort();
    v
}

/// Length of the Weyl element represented by a word: the number of positive
/// roots it sends to negative roots.
pub fn inversion_count(cd: &CartanData, word: &WeylWord) -> usize {
    positive_roots(cd)
        .iter()
        .filter(|root| {
            let img = weyl_apply(cd, word, root, Lattice::Root);
            img.iter().any(|&c| c < 0)
        })
        .count()
}

/// True iff the word's length equals the inversion count of the element it
/// represents.
pub fn is_reduced(cd: &CartanData, word: &WeylWord) -> Result<bool> {
    for &l in &word.letters {
        if l >= cd.rank {
            return Err(Error::InvalidInput(format!(
                "letter {} out of range for rank {}",
                l + 1,
                cd.rank
            )));
        }
    }
    Ok(inversion_count(cd, word) == word.len())
}

/// Action matrix of a word on the coroot lattice; columns are the images of
/// the simple coroots. Weyl element equality is equality of these matrices.
pub fn action_matrix(cd: &CartanData, word: &WeylWord) -> Vec<i64> {
    let r = cd.rank;
    let mut m = Vec::with_capacity(r * r);
    for j in 0..r {
        let mut e = vec![0i64; r];
        e[j] = 1;
        let img = weyl_apply(cd, word, &e, Lattice::Coroot);
        m.extend(img);
    }
    m
}

/// Deterministic reduced word for the longest element w0: the
/// lexicographically smallest one, found by breadth-first search over the
/// Weyl group. Errors for groups too large to enumerate (E-types); supply
/// and validate a word with [`is_reduced`] instead.
pub fn longest_word(cd: &CartanData) -> Result<WeylWord> {
    const CAP: usize = 2_000_000;
    let r = cd.rank;
    let m = cd.num_positive_roots;
    let id = action_matrix(cd, &WeylWord::new(vec![]));
    let mut dist: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    dist.insert(id.clone(), vec![]);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(id);
    while let Some(mat) = queue.pop_front() {
        let word = dist.get(&mat).unwrap().clone();
        if word.len() == m {
            return Ok(WeylWord::new(word));
        }
        if dist.len() > CAP {
            break;
        }
        for i in 0..r {
            // right-multiply: w s_i, acting first by s_i
            let mut letters = word.clone();
            letters.push(i);
            let new_word = WeylWord::new(letters);
            let new_mat = action_matrix(cd, &new_word);
            if !dist.contains_key(&new_mat) {
                dist.insert(new_mat.clone(), new_word.letters.clone());
                queue.push_back(new_mat);
            }
        }
    }
    Err(Error::InvalidInput(format!(
        "Weyl group of {}{} too large to enumerate; supply a reduced word for w0",
        cd.series, cd.rank
    )))
}

/// Validate that a word is a reduced expression of w0 (length m and reduced).
pub fn check_w0_word(cd: &CartanData, word: &WeylWord) -> Result<()> {
    if word.len() != cd.num_positive_roots {
        return Err(Error::NotReduced(word.letters.clone()));
    }
    if !is_reduced(cd, word)? {
        return Err(Error::NotReduced(word.letters.clone()));
    }
    Ok(())
}

/// The chains `alpha_k = s_{i_m} ... s_{i_{k+1}} alpha_{i_k}` and
/// `beta_k = s_{i_m} ... s_{i_{k+1}} alpha_{i_k}^vee` for a reduced word.
pub fn root_coroot_chains(cd: &CartanData, word: &WeylWord) -> Result<RootChain> {
    if !is_reduced(cd, word)? {
        return Err(Error::NotReduced(word.letters.clone()));
    }
    let m = word.len();
    let r = cd.rank;
    let mut alphas = vec![Vec::new(); m];
    let mut betas = vec![Vec::new(); m];
    // op = s_{i_m} ... s_{i_{k+1}}, built from the right end of the word
    let mut op: Vec<usize> = Vec::new(); // letters of the operator, leftmost acts last
    for k in (0..m).rev() {
        let i = word.letters[k];
        let mut alpha = vec![0i64; r];
        alpha[i] = 1;
        let mut beta = vec![0i64; r];
        beta[i] = 1;
        let w = WeylWord::new(op.clone());
        alphas[k] = weyl_apply(cd, &w, &alpha, Lattice::Root);
        betas[k] = weyl_apply(cd, &w, &beta, Lattice::Coroot);
        // extend operator to include s_{i_k} for the next (smaller) k
        op.push(i);
    }
    Ok(RootChain { alphas, betas })
}

/// Is a chain vector a simple root/coroot? Returns its index if so.
pub fn simple_index(v: &[i64]) -> Option<usize> {
    let mut idx = None;
    for (i, &c) in v.iter().enumerate() {
        match c {
            0 => {}
            1 if idx.is_none() => idx = Some(i),
            _ => return None,
        }
    }
    idx
}

/// The involution i -> i* with `alpha_{i*}^vee = -w0(alpha_i^vee)`.
pub fn star_involution(cd: &CartanData, w0: &WeylWord) -> Result<Vec<usize>> {
    check_w0_word(cd, w0)?;
    let r = cd.rank;
    let mut star = vec![0usize; r];
    for i in 0..r {
        let mut e = vec![0i64; r];
        e[i] = 1;
        let img = weyl_apply(cd, w0, &e, Lattice::Coroot);
        let neg: Vec<i64> = img.iter().map(|&c| -c).collect();
        star[i] = simple_index(&neg).ok_or_else(|| {
            Error::InvalidInput("-w0(alpha_i^vee) is not a simple coroot".into())
        })?;
    }
    Ok(star)
}

/// Pairing of a root (simple-root coords) with a coroot (simple-coroot coords).
pub fn pair_root_coroot(cd: &CartanData, root: &[i64], coroot: &[i64]) -> i64 {
    let mut s = 0;
    for a in 0..cd.rank {
        for b in 0..cd.rank {
            s += root[a] * cd.cartan[a][b] * coroot[b];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(series: Series, rank: usize) -> CartanData {
        cartan_data(series, rank).unwrap()
    }

    #[test]
    fn rank_one_is_forced() {
        let a1 = cd(Series::A, 1);
        assert_eq!(a1.cartan, vec![vec![2]]);
        assert_eq!(a1.symmetrizers, vec![1]);
        assert_eq!(a1.num_positive_roots, 1);
    }

    #[test]
    fn b3_multipliers_follow_the_quiver_figure() {
        let b3 = cd(Series::B, 3);
        assert_eq!(b3.symmetrizers, vec![2, 1, 1]);
    }

    #[test]
    fn g2_multipliers_solve_symmetrizability() {
        let g2 = cd(Series::G, 2);
        assert_eq!(g2.cartan, vec![vec![2, -1], vec![-3, 2]]);
        assert_eq!(g2.symmetrizers, vec![3, 1]);
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(cartan_data(Series::D, 3).is_err());
        assert!(cartan_data(Series::E, 9).is_err());
        assert!(cartan_data(Series::G, 3).is_err());
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(cd(Series::A, 2).num_positive_roots, 3);
        assert_eq!(cd(Series::A, 3).num_positive_roots, 6);
        assert_eq!(cd(Series::B, 2).num_positive_roots, 4);
        assert_eq!(cd(Series::B, 3).num_positive_roots, 9);
        assert_eq!(cd(Series::C, 3).num_positive_roots, 9);
        assert_eq!(cd(Series::D, 4).num_positive_roots, 12);
        assert_eq!(cd(Series::G, 2).num_positive_roots, 6);
        assert_eq!(cd(Series::F, 4).num_positive_roots, 24);
    }

    #[test]
    fn reducedness_by_inversion_count() {
        let a2 = cd(Series::A, 2);
        assert!(is_reduced(&a2, &WeylWord::new(vec![0, 1, 0])).unwrap());
        assert!(!is_reduced(&a2, &WeylWord::new(vec![0, 0])).unwrap());
        let a1 = cd(Series::A, 1);
        assert!(is_reduced(&a1, &WeylWord::new(vec![0])).unwrap());
    }

    #[test]
    fn exhaustive_reduced_words_of_w0_in_a2() {
        // brute-force: the only length-3 reduced expressions of w0 are 121 and 212
        let a2 = cd(Series::A, 2);
        let w0_mat = action_matrix(&a2, &longest_word(&a2).unwrap());
        let mut found = Vec::new();
        for a in 0..2usize {
            for b in 0..2usize {
                for c in 0..2usize {
                    let w = WeylWord::new(vec![a, b, c]);
                    if action_matrix(&a2, &w) == w0_mat && is_reduced(&a2, &w).unwrap() {
                        found.push(vec![a, b, c]);
                    }
                }
            }
        }
        found.sort();
        assert_eq!(found, vec![vec![0, 1, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn longest_words_are_deterministic_and_reduced() {
        let a1 = cd(Series::A, 1);
        assert_eq!(longest_word(&a1).unwrap().letters, vec![0]);
        let a2 = cd(Series::A, 2);
        assert_eq!(longest_word(&a2).unwrap().letters, vec![0, 1, 0]);
        let b2 = cd(Series::B, 2);
        let w = longest_word(&b2).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.letters, vec![0, 1, 0, 1]);
        for (series, rank) in [
            (Series::A, 3),
            (Series::B, 3),
            (Series::C, 3),
            (Series::D, 4),
            (Series::G, 2),
            (Series::F, 4),
        ] {
            let c = cd(series, rank);
            let w = longest_word(&c).unwrap();
            assert_eq!(w.len(), c.num_positive_roots, "{series}{rank}");
            assert!(is_reduced(&c, &w).unwrap());
        }
    }

    #[test]
    fn coroot_chain_of_a2_matches_hand_computation() {
        let a2 = cd(Series::A, 2);
        let chain =
            root_coroot_chains(&a2, &WeylWord::new(vec![0, 1, 0])).unwrap();
        assert_eq!(
            chain.betas,
            vec![vec![0, 1], vec![1, 1], vec![1, 0]]
        );
        assert_eq!(
            chain.alphas,
            vec![vec![0, 1], vec![1, 1], vec![1, 0]]
        );
    }

    #[test]
    fn a1_chain_is_trivial() {
        let a1 = cd(Series::A, 1);
        let chain = root_coroot_chains(&a1, &WeylWord::new(vec![0])).unwrap();
        assert_eq!(chain.betas, vec![vec![1]]);
    }

    #[test]
    fn chains_are_distinct_positive_for_all_reduced_w0_words() {
        for (series, rank) in [(Series::A, 2), (Series::B, 2), (Series::A, 3), (Series::B, 3)] {
            let c = cd(series, rank);
            let w = longest_word(&c).unwrap();
            let chain = root_coroot_chains(&c, &w).unwrap();
            let mut betas = chain.betas.clone();
            assert!(betas.iter().all(|b| b.iter().all(|&x| x >= 0)));
            betas.sort();
            betas.dedup();
            assert_eq!(betas.len(), c.num_positive_roots, "{series}{rank}");
        }
    }

    #[test]
    fn star_involution_values() {
        let a1 = cd(Series::A, 1);
        assert_eq!(star_involution(&a1, &longest_word(&a1).unwrap()).unwrap(), vec![0]);
        let a2 = cd(Series::A, 2);
        assert_eq!(star_involution(&a2, &longest_word(&a2).unwrap()).unwrap(), vec![1, 0]);
        let b3 = cd(Series::B, 3);
        assert_eq!(star_involution(&b3, &longest_word(&b3).unwrap()).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn star_is_an_involution_preserving_cartan_data() {
        for (series, rank) in [(Series::A, 3), (Series::B, 3), (Series::D, 4), (Series::G, 2)] {
            let c = cd(series, rank);
            let w0 = longest_word(&c).unwrap();
            let star = star_involution(&c, &w0).unwrap();
            for i in 0..c.rank {
                assert_eq!(star[star[i]], i);
                assert_eq!(c.symmetrizers[star[i]], c.symmetrizers[i]);
                for j in 0..c.rank {
                    assert_eq!(c.cartan[i][j], c.cartan[star[i]][star[j]]);
                }
            }
        }
    }

    #[test]
    fn reflections_act_as_expected() {
        let a2 = cd(Series::A, 2);
        // s_i alpha_i^vee = -alpha_i^vee
        assert_eq!(reflect(&a2, 0, &[1, 0], Lattice::Coroot), vec![-1, 0]);
        // s_2(alpha_1^vee) = alpha_1^vee + alpha_2^vee
        assert_eq!(reflect(&a2, 1, &[1, 0], Lattice::Coroot), vec![1, 1]);
        // w0 applied twice is the identity
        let w0 = longest_word(&a2).unwrap();
        let v = vec![3, -5];
        let once = weyl_apply(&a2, &w0, &v, Lattice::Weight);
        let twice = weyl_apply(&a2, &w0, &once, Lattice::Weight);
        assert_eq!(twice, v);
    }
}
