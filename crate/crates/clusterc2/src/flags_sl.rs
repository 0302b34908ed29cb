//! Concrete decorated flags for SL(n) and the evaluation of seeds.
//!
//! A decorated flag is stored as n-1 exact-rational vectors; the underlying
//! flag is the chain of their spans, and the Delta-functions are leading
//! minors. The Bruhat invariants of a pair come from the exact factorization
//! `g = u h nbar_w u'` (torus on the left of the lift), and the unique chain
//! between two generic decorated flags is built by weaving torus corrections
//! through the product of the simple-reflection lifts.

use crate::cluster_seed::{eval_expr, CoordLabel, Seed};
use crate::k2_wedge::{evaluate_wedge, TorsionMode, WedgeValue};
use crate::ratutil::int;
use crate::root_system::{cartan_data, root_coroot_chains, simple_index, Series, WeylWord};
use crate::sampling::ChaCha8Rng;
use crate::{Error, Rat, Result};
use num::traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

pub type Mat = Vec<Vec<Rat>>;

pub fn mat_identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    let mut out = vec![vec![Rat::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = Rat::zero();
            for t in 0..inner {
                if !a[i][t].is_zero() && !b[t][j].is_zero() {
                    acc += a[i][t].clone() * b[t][j].clone();
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn mat_det(m: &Mat) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let pivot = (c..n).find(|&r| !a[r][c].is_zero());
        let Some(pr) = pivot else {
            return Rat::zero();
        };
        if pr != c {
            a.swap(pr, c);
            det = -det;
        }
        det *= a[c][c].clone();
        let inv = Rat::one() / a[c][c].clone();
        for r in (c + 1)..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() * inv.clone();
            for j in c..n {
                let sub = f.clone() * a[c][j].clone();
                a[r][j] -= sub;
            }
        }
    }
    det
}

pub fn mat_inv(m: &Mat) -> Result<Mat> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv = mat_identity(n);
    for c in 0..n {
        let pivot = (c..n).find(|&r| !a[r][c].is_zero());
        let Some(pr) = pivot else {
            return Err(Error::Degenerate("singular matrix".into()));
        };
        a.swap(pr, c);
        inv.swap(pr, c);
        let p = a[c][c].clone();
        for j in 0..n {
            a[c][j] /= p.clone();
            inv[c][j] /= p.clone();
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..n {
                    let s1 = f.clone() * a[c][j].clone();
                    a[r][j] -= s1;
                    let s2 = f.clone() * inv[c][j].clone();
                    inv[r][j] -= s2;
                }
            }
        }
    }
    Ok(inv)
}

/// A decorated flag for SL(n): n-1 linearly independent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedFlag {
    pub n: usize,
    /// columns v_1 .. v_{n-1}
    pub vecs: Vec<Vec<Rat>>,
}

impl DecoratedFlag {
    pub fn new(n: usize, vecs: Vec<Vec<Rat>>) -> Result<Self> {
        if vecs.len() != n - 1 || vecs.iter().any(|v| v.len() != n) {
            return Err(Error::InvalidInput("flag needs n-1 vectors of length n".into()));
        }
        let f = DecoratedFlag { n, vecs };
        if f.matrix_form().is_err() {
            return Err(Error::Degenerate("decoration vectors are dependent".into()));
        }
        Ok(f)
    }

    /// The standard ascending flag e_1, .., e_{n-1}.
    pub fn standard(n: usize) -> Self {
        let vecs = (0..n - 1)
            .map(|i| {
                (0..n)
                    .map(|r| if r == i { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        DecoratedFlag { n, vecs }
    }

    /// A determinant-one matrix whose first n-1 columns are the decoration.
    /// Any two such completions differ by a unipotent factor on the right.
    pub fn matrix_form(&self) -> Result<Mat> {
        let n = self.n;
        for j in 0..n {
            let mut m = vec![vec![Rat::zero(); n]; n];
            for (c, v) in self.vecs.iter().enumerate() {
                for r in 0..n {
                    m[r][c] = v[r].clone();
                }
            }
            m[j][n - 1] = Rat::one();
            let d = mat_det(&m);
            if !d.is_zero() {
                let inv = Rat::one() / d;
                for r in 0..n {
                    m[r][n - 1] = m[r][n - 1].clone() * inv.clone();
                }
                return Ok(m);
            }
        }
        Err(Error::Degenerate("decoration vectors are dependent".into()))
    }

    pub fn translate(&self, g: &Mat) -> Self {
        let vecs = self
            .vecs
            .iter()
            .map(|v| {
                (0..self.n)
                    .map(|r| {
                        let mut acc = Rat::zero();
                        for (c, x) in v.iter().enumerate() {
                            acc += g[r][c].clone() * x.clone();
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        DecoratedFlag { n: self.n, vecs }
    }

    /// Equality as decorated flags (same unipotent coset).
    pub fn same_flag(&self, other: &Self) -> Result<bool> {
        let a = self.matrix_form()?;
        let b = other.matrix_form()?;
        let q = mat_mul(&mat_inv(&a)?, &b);
        for i in 0..self.n {
            if q[i][i] != Rat::one() {
                return Ok(false);
            }
            for j in 0..i {
                if !q[i][j].is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// An ordered configuration of decorated flags, keyed by small ids so that
/// seed labels can reference them.
pub type FlagConfig = BTreeMap<u8, DecoratedFlag>;

/// `Delta_i(F, G)`: the determinant whose columns are F's first i decoration
/// vectors followed by G's first n-i.
pub fn delta(f: &DecoratedFlag, g: &DecoratedFlag, i: usize) -> Result<Rat> {
    if f.n != g.n {
        return Err(Error::InvalidInput("flags of different dimension".into()));
    }
    let n = f.n;
    if i == 0 || i >= n {
        return Err(Error::InvalidInput(format!("level {i} out of range")));
    }
    let mut m = vec![vec![Rat::zero(); n]; n];
    for c in 0..i {
        for r in 0..n {
            m[r][c] = f.vecs[c][r].clone();
        }
    }
    for c in 0..(n - i) {
        for r in 0..n {
            m[r][i + c] = g.vecs[c][r].clone();
        }
    }
    Ok(mat_det(&m))
}

/// Generic position: all Delta_i nonzero.
pub fn is_generic(f: &DecoratedFlag, g: &DecoratedFlag) -> Result<bool> {
    for i in 1..f.n {
        if delta(f, g, i)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The lift of a simple reflection: the 2x2 block [[0, -1], [1, 0]] at
/// rows/columns (i, i+1).
pub fn simple_lift(n: usize, i: usize) -> Mat {
    let mut m = mat_identity(n);
    m[i][i] = Rat::zero();
    m[i + 1][i + 1] = Rat::zero();
    m[i][i + 1] = -Rat::one();
    m[i + 1][i] = Rat::one();
    m
}

/// Canonical lift of a permutation word.
pub fn word_lift(n: usize, word: &WeylWord) -> Mat {
    let mut m = mat_identity(n);
    for &i in &word.letters {
        m = mat_mul(&m, &simple_lift(n, i));
    }
    m
}

/// Reduced word of a permutation (w as images: c -> w(c)).
pub fn permutation_word(perm: &[usize]) -> WeylWord {
    let mut w: Vec<usize> = perm.to_vec();
    let mut collected = Vec::new();
    loop {
        let mut moved = false;
        for i in 0..w.len() - 1 {
            if w[i] > w[i + 1] {
                collected.push(i);
                w.swap(i, i + 1);
                moved = true;
                break;
            }
        }
        if !moved {
            break;
        }
    }
    collected.reverse();
    WeylWord::new(collected)
}

/// Bruhat invariants of an ordered pair of decorated flags, with the torus
/// on the left of the permutation lift: `g = u h nbar_w u'`.
#[derive(Debug, Clone)]
pub struct BruhatData {
    /// images c -> w(c) of the relative position
    pub perm: Vec<usize>,
    pub word: WeylWord,
    /// diagonal entries of h (left convention), product 1
    pub h_diag: Vec<Rat>,
}

impl BruhatData {
    /// Fundamental-weight coordinates `Lambda_i(h)`, i = 1..n-1.
    pub fn lambdas(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.h_diag.len() - 1);
        let mut acc = Rat::one();
        for d in &self.h_diag[..self.h_diag.len() - 1] {
            acc *= d.clone();
            out.push(acc.clone());
        }
        out
    }

    /// The right-convention torus part: `h_l = w(h_r)`.
    pub fn h_right(&self) -> Vec<Rat> {
        let n = self.h_diag.len();
        let mut out = vec![Rat::zero(); n];
        // (w(h))_{w(i)} = h_i, so h_r[i] = h_l[w(i)]
        for i in 0..n {
            out[i] = self.h_diag[self.perm[i]].clone();
        }
        out
    }
}

/// Apply a permutation to a torus element: `(w(h))_{w(i)} = h_i`.
pub fn torus_weyl_apply(perm: &[usize], h: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); h.len()];
    for i in 0..h.len() {
        out[perm[i]] = h[i].clone();
    }
    out
}

struct BruhatFactorization {
    perm: Vec<usize>,
    pivots: Vec<Rat>,
    /// the left unipotent u with g = u * (h nbar_w) * u'
    u_left: Mat,
}

fn bruhat_factorize(g: &Mat) -> Result<BruhatFactorization> {
    let n = g.len();
    let mut m = g.to_vec();
    let mut u_left = mat_identity(n);
    let mut perm = vec![usize::MAX; n];
    let mut pivots = vec![Rat::zero(); n];
    for c in 0..n {
        let r = (0..n)
            .rev()
            .find(|&r| !m[r][c].is_zero())
            .ok_or_else(|| Error::Degenerate("singular matrix in Bruhat step".into()))?;
        perm[c] = r;
        pivots[c] = m[r][c].clone();
        let pinv = Rat::one() / m[r][c].clone();
        // clear the column above the pivot by row operations (upper unipotent
        // on the left); record the inverse operation into u_left
        for i in 0..r {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * pinv.clone();
            for j in 0..n {
                let s = f.clone() * m[r][j].clone();
                m[i][j] -= s;
            }
            // u_left := u_left * (I + f e_{i r})
            for t in 0..n {
                let s = u_left[t][i].clone() * f.clone();
                u_left[t][r] += s;
            }
        }
        // clear the pivot row to the right by column operations (upper
        // unipotent on the right)
        for j in (c + 1)..n {
            if m[r][j].is_zero() {
                continue;
            }
            let f = m[r][j].clone() * pinv.clone();
            for t in 0..n {
                let s = f.clone() * m[t][c].clone();
                m[t][j] -= s;
            }
        }
    }
    Ok(BruhatFactorization {
        perm,
        pivots,
        u_left,
    })
}

/// Invariants of the pair (F, G): factorize `M_F^{-1} M_G`.
pub fn bruhat_invariants(f: &DecoratedFlag, g: &DecoratedFlag) -> Result<BruhatData> {
    let mf = f.matrix_form()?;
    let mg = g.matrix_form()?;
    let rel = mat_mul(&mat_inv(&mf)?, &mg);
    let fac = bruhat_factorize(&rel)?;
    let word = permutation_word(&fac.perm);
    let lift = word_lift(f.n, &word);
    let mut h_diag = vec![Rat::zero(); f.n];
    for c in 0..f.n {
        let r = fac.perm[c];
        h_diag[r] = fac.pivots[c].clone() / lift[r][c].clone();
    }
    Ok(BruhatData {
        perm: fac.perm,
        word,
        h_diag,
    })
}

/// The cocharacter `alpha_i^vee(t)` of SL(n) as a diagonal matrix.
fn simple_cocharacter(n: usize, i: usize, t: &Rat) -> Mat {
    let mut m = mat_identity(n);
    m[i][i] = t.clone();
    m[i + 1][i + 1] = Rat::one() / t.clone();
    m
}

/// The unique chain of decorated flags from F to G attached to a reduced
/// word of the longest element: consecutive relative positions are the
/// letters, and the h-distance of step k is trivial unless beta_k is simple.
pub fn flag_chain(
    f: &DecoratedFlag,
    g: &DecoratedFlag,
    word: &WeylWord,
) -> Result<Vec<DecoratedFlag>> {
    let n = f.n;
    let rank = n - 1;
    let cd = cartan_data(Series::A, rank)?;
    crate::root_system::check_w0_word(&cd, word)?;
    if !is_generic(f, g)? {
        return Err(Error::Degenerate("flag pair is not generic".into()));
    }
    let m = word.len();
    let mf = f.matrix_form()?;
    let mg = g.matrix_form()?;
    let rel = mat_mul(&mat_inv(&mf)?, &mg);
    let fac = bruhat_factorize(&rel)?;
    // the pair must sit in the big cell
    for c in 0..n {
        if fac.perm[c] != n - 1 - c {
            return Err(Error::Degenerate("pair is not in the big Bruhat cell".into()));
        }
    }
    let w0_word = permutation_word(&fac.perm);
    let lift = word_lift(n, &w0_word);
    let mut h_left = vec![Rat::zero(); n];
    for c in 0..n {
        let r = fac.perm[c];
        h_left[r] = fac.pivots[c].clone() / lift[r][c].clone();
    }
    // w0 reverses the diagonal
    let w0_h: Vec<Rat> = (0..n).map(|i| h_left[n - 1 - i].clone()).collect();
    let lambda = |diag: &[Rat], j: usize| -> Rat {
        let mut acc = Rat::one();
        for d in diag.iter().take(j + 1) {
            acc *= d.clone();
        }
        acc
    };
    // solve prod_k beta_k(t_k) = w0(h): the h-distance of a step, taken on
    // the (earlier, later) pair, is trivial at non-simple positions, which
    // forces t_k = 1 there; each simple coroot occurs once, and its
    // coordinate equation is linear
    let chain = root_coroot_chains(&cd, word)?;
    let mut t = vec![Rat::one(); m];
    for k in 0..m {
        if let Some(j) = simple_index(&chain.betas[k]) {
            t[k] = lambda(&w0_h, j);
        }
    }
    // weave the chain: F^k = u * (sbar_{i_1} tau_1) ... (sbar_{i_k} tau_k) E
    let mut acc = mat_mul(&mf, &fac.u_left);
    let mut flags = Vec::with_capacity(m + 1);
    let take_flag = |mat: &Mat| -> DecoratedFlag {
        let vecs = (0..n - 1)
            .map(|c| (0..n).map(|r| mat[r][c].clone()).collect())
            .collect();
        DecoratedFlag { n, vecs }
    };
    flags.push(take_flag(&acc));
    for k in 0..m {
        let i = word.letters[k];
        acc = mat_mul(&acc, &simple_lift(n, i));
        acc = mat_mul(&acc, &simple_cocharacter(n, i, &t[k]));
        flags.push(take_flag(&acc));
    }
    if !flags[0].same_flag(f)? {
        return Err(Error::Degenerate("chain does not start at F".into()));
    }
    if !flags[m].same_flag(g)? {
        return Err(Error::Degenerate("chain does not end at G".into()));
    }
    Ok(flags)
}

/// Evaluate every label of a seed at a configuration of decorated flags.
/// Frozen edge labels are Delta-minors; chain labels use the unique chain of
/// the bottom edge with respect to the starred word.
pub fn evaluate_seed(seed: &Seed, cfg: &FlagConfig) -> Result<Vec<Rat>> {
    let mut evaluator = seed_evaluator(seed, cfg)?;
    seed.evaluate_labels(&mut evaluator)
}

/// The atom evaluator used by [`evaluate_seed`]; exposed so callers can
/// evaluate derived expressions (exchange monomials) against the same chains.
pub fn seed_evaluator<'a>(
    seed: &Seed,
    cfg: &'a FlagConfig,
) -> Result<impl FnMut(&CoordLabel) -> Result<Rat> + 'a> {
    let n = cfg
        .values()
        .next()
        .ok_or_else(|| Error::InvalidInput("empty configuration".into()))?
        .n;
    if seed.cd.series != Series::A || seed.cd.rank != n - 1 {
        return Err(Error::InvalidInput(format!(
            "evaluator supports SL(n) only; seed type {}{} does not match n={}",
            seed.cd.series, seed.cd.rank, n
        )));
    }
    let starred = crate::cluster_seed::starred_word(&seed.cd, &seed.word)?;
    let mut chains: BTreeMap<(u8, u8), Vec<DecoratedFlag>> = BTreeMap::new();
    let cfg_ref = cfg;
    Ok(move |label: &CoordLabel| -> Result<Rat> {
        match label {
            CoordLabel::Edge { level, a, b } => {
                let fa = cfg_ref
                    .get(a)
                    .ok_or_else(|| Error::LabelNotFound(format!("flag {a}")))?;
                let fb = cfg_ref
                    .get(b)
                    .ok_or_else(|| Error::LabelNotFound(format!("flag {b}")))?;
                delta(fa, fb, level + 1)
            }
            CoordLabel::Chain { tri, p, level } => {
                let [a, b, c] = tri;
                let fa = cfg_ref
                    .get(a)
                    .ok_or_else(|| Error::LabelNotFound(format!("flag {a}")))?;
                if !chains.contains_key(&(*b, *c)) {
                    let fb = cfg_ref
                        .get(b)
                        .ok_or_else(|| Error::LabelNotFound(format!("flag {b}")))?;
                    let fc = cfg_ref
                        .get(c)
                        .ok_or_else(|| Error::LabelNotFound(format!("flag {c}")))?;
                    let chain = flag_chain(fb, fc, &starred)?;
                    chains.insert((*b, *c), chain);
                }
                let chain = &chains[&(*b, *c)];
                delta(fa, &chain[*p], level + 1)
            }
            CoordLabel::Token(s) => Err(Error::LabelNotFound(s.clone())),
        }
    })
}

/// A random decorated flag with small integer coordinates.
pub fn random_flag(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> DecoratedFlag {
    loop {
        let vecs: Vec<Vec<Rat>> = (0..n - 1)
            .map(|_| crate::sampling::int_vector(rng, n, bound))
            .collect();
        if let Ok(f) = DecoratedFlag::new(n, vecs) {
            return f;
        }
    }
}

/// A configuration of `count` flags, pairwise generic, with every seed label
/// nonzero would-be-checked by the caller.
pub fn random_generic_config(
    rng: &mut ChaCha8Rng,
    n: usize,
    ids: &[u8],
    bound: i64,
) -> FlagConfig {
    'outer: loop {
        let mut cfg = FlagConfig::new();
        for &id in ids {
            cfg.insert(id, random_flag(rng, n, bound));
        }
        let flags: Vec<&DecoratedFlag> = cfg.values().collect();
        for i in 0..flags.len() {
            for j in 0..flags.len() {
                if i != j && !is_generic(flags[i], flags[j]).unwrap_or(false) {
                    continue 'outer;
                }
            }
        }
        return cfg;
    }
}

/// A configuration at which every label of the seed evaluates nonzero.
pub fn random_config_for_seed(
    rng: &mut ChaCha8Rng,
    seed: &Seed,
    ids: &[u8],
    bound: i64,
) -> Result<FlagConfig> {
    let n = seed.cd.rank + 1;
    for _ in 0..500 {
        let cfg = random_generic_config(rng, n, ids, bound);
        match evaluate_seed(seed, &cfg) {
            Ok(vals) if vals.iter().all(|v| !v.is_zero()) => return Ok(cfg),
            _ => continue,
        }
    }
    Err(Error::SamplerExhausted(500))
}

/// Configurations on which label `k` vanishes while every other label stays
/// nonzero, found by solving the label as a linear function of one flag
/// coordinate.
pub fn divisor_sample(
    seed: &Seed,
    k: usize,
    ids: &[u8],
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<FlagConfig>> {
    let n = seed.cd.rank + 1;
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < trials {
        attempts += 1;
        if attempts > 200 * trials + 200 {
            return Err(Error::SamplerExhausted(attempts));
        }
        let cfg = random_generic_config(rng, n, ids, 10);
        // pick a flag/vector/coordinate to vary
        let fid = ids[rng.gen_range(0..ids.len())];
        let vi = rng.gen_range(0..n - 1);
        let ci = rng.gen_range(0..n);
        let value_at = |t: &Rat| -> Result<Rat> {
            let mut cfg2 = cfg.clone();
            let flag = cfg2.get_mut(&fid).unwrap();
            flag.vecs[vi][ci] = t.clone();
            let vals = evaluate_seed(seed, &cfg2)?;
            Ok(vals[k].clone())
        };
        let (a, b, c) = match (value_at(&int(0)), value_at(&int(1)), value_at(&int(2))) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => continue,
        };
        // linear in the coordinate iff the second difference vanishes
        if c.clone() - b.clone() - b.clone() + a.clone() != Rat::zero() || a == b {
            continue;
        }
        let root = a.clone() / (a.clone() - b.clone());
        let mut cfg2 = cfg.clone();
        cfg2.get_mut(&fid).unwrap().vecs[vi][ci] = root;
        match evaluate_seed(seed, &cfg2) {
            Ok(vals) => {
                if !vals[k].is_zero() {
                    continue;
                }
                if vals
                    .iter()
                    .enumerate()
                    .any(|(j, v)| j != k && v.is_zero())
                {
                    continue;
                }
                out.push(cfg2);
            }
            Err(_) => continue,
        }
    }
    Ok(out)
}

/// The finite group 2-cocycle: C2 evaluated on the orbit triple of a base
/// decorated flag.
pub fn group_2cocycle(
    g1: &Mat,
    g2: &Mat,
    g3: &Mat,
    base: &DecoratedFlag,
    mode: TorsionMode,
) -> Result<WedgeValue> {
    let n = base.n;
    let cd = cartan_data(Series::A, n - 1)?;
    let word = crate::root_system::longest_word(&cd)?;
    let seed = crate::cluster_seed::triangle_seed(&cd, &word, [1, 2, 3])?;
    let mut cfg = FlagConfig::new();
    cfg.insert(1, base.translate(g1));
    cfg.insert(2, base.translate(g2));
    cfg.insert(3, base.translate(g3));
    for (a, b) in [(1u8, 2u8), (1, 3), (2, 3)] {
        if !is_generic(&cfg[&a], &cfg[&b])? {
            return Err(Error::Degenerate(format!("flags {a}, {b} not generic")));
        }
    }
    let values = evaluate_seed(&seed, &cfg)?;
    let w = crate::cluster_seed::w_element(&seed);
    evaluate_wedge(&w, mode, |v| Ok(values[*v].clone()))
}

/// A random element of SL(n) built from elementary row operations.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize) -> Mat {
    let mut m = mat_identity(n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = int(rng.gen_range(-3..=3));
        // m := m * E_{ij}(c)
        for r in 0..n {
            let s = m[r][i].clone() * c.clone();
            m[r][j] += s;
        }
    }
    m
}
