//! Bloch-group elements and the identities tying them to the wedge level:
//! the boundary map `{x} -> (1 - x) ^ x`, five-term relations of cross-ratios,
//! the rank-one alternation identity, sign behavior under permutations of the
//! four flags, and the surface / threefold sums built from C1 and C2.

use crate::cluster_seed::{
    c1_element, conf4_seeds, eval_monomial, find_mutation_path, triangle_seed, w_element,
    CoordLabel, Seed,
};
use crate::flags_sl::{
    delta, evaluate_seed, random_config_for_seed, random_generic_config, seed_evaluator,
    DecoratedFlag, FlagConfig,
};
use crate::k2_wedge::{evaluate_wedge, wedge_value_of, TorsionMode, WedgeElement, WedgeValue};
use crate::ratutil::int;
use crate::root_system::{cartan_data, CartanData, Series, WeylWord};
use crate::sampling::{rational_avoiding, rng_from_seed, ChaCha8Rng};
use crate::{Error, Rat, Result};
use num::complex::Complex64;
use num::traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// A point of the projective line over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProjPoint {
    Fin(Rat),
    Inf,
}

impl ProjPoint {
    fn homogeneous(&self) -> (Rat, Rat) {
        match self {
            ProjPoint::Fin(x) => (x.clone(), Rat::one()),
            ProjPoint::Inf => (Rat::one(), Rat::zero()),
        }
    }
}

fn bracket(p: &ProjPoint, q: &ProjPoint) -> Rat {
    let (a, b) = p.homogeneous();
    let (c, d) = q.homogeneous();
    a * d - c * b
}

/// The cross-ratio `r(s1, s2, s3, s4) = (s1-s2)(s3-s4) / ((s1-s4)(s2-s3))`,
/// with infinity handled projectively; normalized so r(inf, -1, 0, z) = z.
pub fn cross_ratio(s: &[ProjPoint; 4]) -> Result<Rat> {
    let num = bracket(&s[0], &s[1]) * bracket(&s[2], &s[3]);
    let den = bracket(&s[0], &s[3]) * bracket(&s[1], &s[2]);
    if den.is_zero() {
        return Err(Error::Degenerate("coincident projective points".into()));
    }
    Ok(num / den)
}

/// A formal (1/2)Z-combination of Bloch generators; coefficients doubled,
/// equal arguments merged, arguments 0 and 1 rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlochElement<T: Ord + Clone> {
    terms: BTreeMap<T, i64>,
}

impl<T: Ord + Clone> Default for BlochElement<T> {
    fn default() -> Self {
        BlochElement {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Ord + Clone> BlochElement<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, arg: T, coeff2: i64) {
        if coeff2 == 0 {
            return;
        }
        let e = self.terms.entry(arg.clone()).or_insert(0);
        *e += coeff2;
        if *e == 0 {
            self.terms.remove(&arg);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&T, i64)> {
        self.terms.iter().map(|(a, &c)| (a, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a.clone(), c);
        }
        out
    }
}

impl BlochElement<Rat> {
    pub fn from_args(args: impl IntoIterator<Item = (Rat, i64)>) -> Result<Self> {
        let mut b = Self::zero();
        for (a, c2) in args {
            if a.is_zero() || a.is_one() {
                return Err(Error::InvalidInput("Bloch argument 0 or 1".into()));
            }
            b.add_term(a, c2);
        }
        Ok(b)
    }

    /// The boundary `{x} -> (1 - x) ^ x`, as a formal wedge of rationals.
    pub fn delta(&self) -> WedgeElement<Rat> {
        let mut w = WedgeElement::zero();
        for (x, c2) in self.terms() {
            let one_minus = Rat::one() - x.clone();
            w.add_term(one_minus, x.clone(), c2);
        }
        w
    }

    /// The boundary evaluated into the wedge of Q*.
    pub fn delta_value(&self, mode: TorsionMode) -> Result<WedgeValue> {
        evaluate_wedge(&self.delta(), mode, |x| Ok(x.clone()))
    }
}

/// The boundary of a single generator with doubled coefficient.
pub fn bloch_delta_term(x: &Rat, coeff2: i64, mode: TorsionMode) -> Result<WedgeValue> {
    let one_minus = Rat::one() - x.clone();
    wedge_value_of(&one_minus, x, coeff2, mode)
}

/// The five-term element `sum_i {-r(s_i, s_{i+1}, s_{i+2}, s_{i+3})}` of five
/// distinct points, indices mod 5.
pub fn five_term(s: &[ProjPoint; 5]) -> Result<BlochElement<Rat>> {
    for i in 0..5 {
        for j in (i + 1)..5 {
            if s[i] == s[j] {
                return Err(Error::Degenerate("five-term points must be distinct".into()));
            }
        }
    }
    let mut args = Vec::with_capacity(5);
    for i in 0..5 {
        let quad = [
            s[i].clone(),
            s[(i + 1) % 5].clone(),
            s[(i + 2) % 5].clone(),
            s[(i + 3) % 5].clone(),
        ];
        args.push((-cross_ratio(&quad)?, 2));
    }
    BlochElement::from_args(args)
}

/// The rank-one C1 of a flag quadruple: `{r_2}` with
/// `r_2 = -D12 D34 / (D14 D23)`.
pub fn sl2_c1_argument(cfg: &FlagConfig, ids: [u8; 4]) -> Result<Rat> {
    let f = |i: u8| -> Result<&DecoratedFlag> {
        cfg.get(&i)
            .ok_or_else(|| Error::LabelNotFound(format!("flag {i}")))
    };
    let d12 = delta(f(ids[0])?, f(ids[1])?, 1)?;
    let d34 = delta(f(ids[2])?, f(ids[3])?, 1)?;
    let d14 = delta(f(ids[0])?, f(ids[3])?, 1)?;
    let d23 = delta(f(ids[1])?, f(ids[2])?, 1)?;
    if d14.is_zero() || d23.is_zero() || d12.is_zero() || d34.is_zero() {
        return Err(Error::Degenerate("quadruple not generic".into()));
    }
    Ok(-(d12 * d34) / (d14 * d23))
}

/// Alternating sum over all permutations of the four vectors of
/// `D(v_{s1} v_{s2}) ^ D(v_{s1} v_{s3})`, evaluated; `scale2` is the doubled
/// prefactor applied to every term.
pub fn alt4_wedge_value(
    cfg: &FlagConfig,
    ids: [u8; 4],
    scale2: i64,
    mode: TorsionMode,
) -> Result<WedgeValue> {
    let perms = permutations4();
    let mut acc = WedgeValue::zero(mode);
    for (perm, sign) in perms {
        let a = cfg.get(&ids[perm[0]]).unwrap();
        let b = cfg.get(&ids[perm[1]]).unwrap();
        let c = cfg.get(&ids[perm[2]]).unwrap();
        let d_ab = delta(a, b, 1)?;
        let d_ac = delta(a, c, 1)?;
        if d_ab.is_zero() || d_ac.is_zero() {
            return Err(Error::Degenerate("degenerate pair in alternation".into()));
        }
        let term = wedge_value_of(&d_ab, &d_ac, sign * scale2, mode)?;
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn permutations4() -> Vec<([usize; 4], i64)> {
    let mut out = Vec::with_capacity(24);
    let mut items = [0usize, 1, 2, 3];
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut [usize; 4], k: usize, out: &mut Vec<([usize; 4], i64)>) {
    if k == 4 {
        let mut inv = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if items[i] > items[j] {
                    inv += 1;
                }
            }
        }
        out.push((*items, if inv % 2 == 0 { 1 } else { -1 }));
        return;
    }
    for i in k..4 {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Report of the C1 coherence check.
#[derive(Debug, Clone)]
pub struct C1Report {
    pub label: String,
    pub trials: usize,
    pub passed: bool,
    pub path_length: Option<usize>,
    pub detail: String,
}

impl std::fmt::Display for C1Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} over {} trials{}{}",
            self.label,
            if self.passed { "pass" } else { "FAIL" },
            self.trials,
            match self.path_length {
                Some(n) => format!(" (path length {n})"),
                None => String::new(),
            },
            if self.detail.is_empty() {
                String::new()
            } else {
                format!(" [{}]", self.detail)
            }
        )
    }
}

/// The rank-one alternation identity: `delta {r_2} = -1/2 Alt_4(D12 ^ D13)`
/// exactly at random rational configurations, modulo torsion per the mode.
pub fn sl2_octahedron_check(
    trials: usize,
    seed: u64,
    mode: TorsionMode,
) -> Result<C1Report> {
    let mut rng = rng_from_seed(seed);
    let mut done = 0;
    while done < trials {
        let cfg = random_generic_config(&mut rng, 2, &[1, 2, 3, 4], 10);
        let Ok(r2) = sl2_c1_argument(&cfg, [1, 2, 3, 4]) else {
            continue;
        };
        if r2.is_one() {
            continue;
        }
        let lhs = bloch_delta_term(&r2, 2, mode)?;
        let rhs = alt4_wedge_value(&cfg, [1, 2, 3, 4], -1, mode)?;
        if lhs.sub(&rhs).is_zero() {
            done += 1;
        } else {
            return Ok(C1Report {
                label: "sl2 octahedron identity".into(),
                trials: done,
                passed: false,
                path_length: None,
                detail: format!("failed at trial {done}"),
            });
        }
    }
    Ok(C1Report {
        label: "sl2 octahedron identity".into(),
        trials,
        passed: true,
        path_length: None,
        detail: String::new(),
    })
}

/// C1 across the rectangle flip: find a mutation path from c_24 to c_13 and
/// verify `delta(sum d_k {-X_k}) = W_{c13} - W_{c24}` exactly at random
/// rational configurations (modulo torsion per the mode).
pub fn c1_conf4_check(
    cd: &CartanData,
    word: &WeylWord,
    trials: usize,
    seed: u64,
    max_depth: usize,
    mode: TorsionMode,
) -> Result<C1Report> {
    let (c13, c24) = conf4_seeds(cd, word)?;
    let label = format!("c1 coherence {}{}", cd.series, cd.rank);
    let mut rng = rng_from_seed(seed);
    let ids = [1u8, 2, 3, 4];
    let fp_cfg1 = random_config_for_seed(&mut rng, &c24, &ids, 8)?;
    let fp_cfg2 = random_config_for_seed(&mut rng, &c24, &ids, 8)?;
    let mut fp1 = |s: &Seed| evaluate_seed(s, &fp_cfg1);
    let mut fp2 = |s: &Seed| evaluate_seed(s, &fp_cfg2);
    let Some(path) = find_mutation_path(&c24, &c13, max_depth, &mut fp1, &mut fp2)? else {
        return Ok(C1Report {
            label,
            trials: 0,
            passed: false,
            path_length: None,
            detail: "no mutation path found".into(),
        });
    };
    let c1 = c1_element(&path);
    let w_from = w_element(&c24);
    let w_to = w_element(&c13);
    let mut done = 0;
    while done < trials {
        let Ok(cfg) = random_config_for_seed(&mut rng, &c24, &ids, 10) else {
            continue;
        };
        // evaluate both W elements and the Bloch boundary at this config
        let vals_from = match evaluate_seed(&c24, &cfg) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let vals_to = match evaluate_seed(&c13, &cfg) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let wv_from = evaluate_wedge(&w_from, mode, |v| Ok(vals_from[*v].clone()))?;
        let wv_to = evaluate_wedge(&w_to, mode, |v| Ok(vals_to[*v].clone()))?;
        let target = wv_to.sub(&wv_from);
        // delta of C1: the arguments are -X_k evaluated in the step seeds
        let mut evaluator = seed_evaluator(&c24, &cfg)?;
        let mut memo = BTreeMap::new();
        let mut lhs = WedgeValue::zero(mode);
        let mut degenerate = false;
        for (dk, mono) in &c1 {
            let x = match eval_monomial(mono, &mut evaluator, &mut memo) {
                Ok(x) => x,
                Err(_) => {
                    degenerate = true;
                    break;
                }
            };
            let arg = -x;
            if arg.is_zero() || arg.is_one() {
                degenerate = true;
                break;
            }
            lhs = lhs.add(&bloch_delta_term(&arg, 2 * dk, mode)?);
        }
        if degenerate {
            continue;
        }
        if !lhs.sub(&target).is_zero() {
            return Ok(C1Report {
                label,
                trials: done,
                passed: false,
                path_length: Some(path.steps.len()),
                detail: format!("identity failed at trial {done}"),
            });
        }
        done += 1;
    }
    Ok(C1Report {
        label,
        trials,
        passed: true,
        path_length: Some(path.steps.len()),
        detail: String::new(),
    })
}

/// Numerically testable sign behavior: `D(C1(sigma config)) =
/// sign(sigma) D(C1(config))` for permutations of the four flags.
pub fn s4_sign_check(trials: usize, seed: u64, tol: f64) -> Result<C1Report> {
    let mut rng = rng_from_seed(seed);
    use rand::Rng;
    let mut done = 0;
    let generators: Vec<(Vec<usize>, f64)> = vec![
        (vec![0, 1, 2, 3], 1.0),  // identity
        (vec![1, 0, 2, 3], -1.0), // transposition
        (vec![1, 2, 3, 0], -1.0), // 4-cycle
    ];
    while done < trials {
        let v: Vec<[Complex64; 2]> = (0..4)
            .map(|_| {
                [
                    Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
                    Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)),
                ]
            })
            .collect();
        let arg = match crate::dilog::c1_argument_sl2([v[0], v[1], v[2], v[3]]) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let d_base = crate::dilog::bloch_wigner(arg);
        if d_base.abs() < 1e-3 {
            continue; // stay away from vanishing values for a meaningful test
        }
        for (perm, sign) in &generators {
            let w = [v[perm[0]], v[perm[1]], v[perm[2]], v[perm[3]]];
            let arg_p = match crate::dilog::c1_argument_sl2(w) {
                Ok(a) => a,
                Err(_) => continue,
            };
            let d_perm = crate::dilog::bloch_wigner(arg_p);
            if (d_perm - sign * d_base).abs() > tol {
                return Ok(C1Report {
                    label: "s4 sign behavior".into(),
                    trials: done,
                    passed: false,
                    path_length: None,
                    detail: format!("permutation {perm:?} failed"),
                });
            }
        }
        done += 1;
    }
    Ok(C1Report {
        label: "s4 sign behavior".into(),
        trials,
        passed: true,
        path_length: None,
        detail: String::new(),
    })
}

/// A triangulated surface: ordered vertex triples referencing global flag
/// ids. Interior edges are unordered pairs shared by two triangles.
#[derive(Debug, Clone)]
pub struct TriangulatedSurface {
    pub triangles: Vec<[u8; 3]>,
}

impl TriangulatedSurface {
    /// Unordered edges with the list of triangles touching them.
    pub fn edge_incidence(&self) -> BTreeMap<(u8, u8), Vec<usize>> {
        let mut map: BTreeMap<(u8, u8), Vec<usize>> = BTreeMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for (a, b) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
                let key = if a < b { (a, b) } else { (b, a) };
                map.entry(key).or_default().push(t);
            }
        }
        map
    }

    pub fn validate(&self) -> Result<()> {
        for (edge, ts) in self.edge_incidence() {
            if ts.len() > 2 {
                return Err(Error::InvalidInput(format!(
                    "edge {edge:?} lies on more than two triangles"
                )));
            }
        }
        Ok(())
    }
}

/// A triangulated 3-complex: ordered vertex quadruples; faces glued by
/// matching unordered triples, with the leftover faces forming the boundary
/// surface.
#[derive(Debug, Clone)]
pub struct Triangulated3Complex {
    pub tetrahedra: Vec<[u8; 4]>,
}

impl Triangulated3Complex {
    /// The signed face sum `sum_T sum_i (-1)^i d_i T` as ordered triples with
    /// doubled coefficients; exactly matched ordered triples cancel.
    pub fn signed_faces(&self) -> BTreeMap<[u8; 3], i64> {
        let mut faces: BTreeMap<[u8; 3], i64> = BTreeMap::new();
        for tet in &self.tetrahedra {
            for i in 0..4 {
                let mut face = [0u8; 3];
                let mut t = 0;
                for (j, &v) in tet.iter().enumerate() {
                    if j != i {
                        face[t] = v;
                        t += 1;
                    }
                }
                let sign = if i % 2 == 0 { 2 } else { -2 };
                let e = faces.entry(face).or_insert(0);
                *e += sign;
                if *e == 0 {
                    faces.remove(&face);
                }
            }
        }
        faces
    }

    pub fn validate(&self) -> Result<()> {
        // every unordered face may appear at most twice across tetrahedra
        let mut count: BTreeMap<[u8; 3], usize> = BTreeMap::new();
        for tet in &self.tetrahedra {
            for i in 0..4 {
                let mut face: Vec<u8> = tet
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, &v)| v)
                    .collect();
                face.sort();
                *count.entry([face[0], face[1], face[2]]).or_insert(0) += 1;
            }
        }
        if count.values().any(|&c| c > 2) {
            return Err(Error::InvalidInput(
                "a face is shared by more than two tetrahedra".into(),
            ));
        }
        Ok(())
    }
}

/// The surface element `W = sum_t C2(triangle t)` evaluated at a
/// configuration.
pub fn surface_w_value(
    cd: &CartanData,
    word: &WeylWord,
    surf: &TriangulatedSurface,
    cfg: &FlagConfig,
    mode: TorsionMode,
) -> Result<WedgeValue> {
    surf.validate()?;
    let mut acc = WedgeValue::zero(mode);
    for tri in &surf.triangles {
        acc = acc.add(&triangle_w_value(cd, word, *tri, cfg, mode)?);
    }
    Ok(acc)
}

/// One triangle's W value at a configuration, with a doubled scale.
pub fn triangle_w_value_scaled(
    cd: &CartanData,
    word: &WeylWord,
    tri: [u8; 3],
    cfg: &FlagConfig,
    scale2: i64,
    mode: TorsionMode,
) -> Result<WedgeValue> {
    let seed = triangle_seed(cd, word, tri)?;
    let vals = evaluate_seed(&seed, cfg)?;
    if vals.iter().any(|v| v.is_zero()) {
        return Err(Error::Degenerate("triangle label vanishes".into()));
    }
    let w = w_element(&seed).scale(scale2);
    let halved = evaluate_wedge(&w, mode, |v| Ok(vals[*v].clone()))?;
    Ok(halved)
}

pub fn triangle_w_value(
    cd: &CartanData,
    word: &WeylWord,
    tri: [u8; 3],
    cfg: &FlagConfig,
    mode: TorsionMode,
) -> Result<WedgeValue> {
    triangle_w_value_scaled(cd, word, tri, cfg, 1, mode)
}

/// The motivic volume of a 3-complex with rank-one flag data: the formal sum
/// of `{r_2}` over tetrahedra.
pub fn motivic_volume(
    m3: &Triangulated3Complex,
    cfg: &FlagConfig,
) -> Result<BlochElement<Rat>> {
    m3.validate()?;
    let mut args = Vec::new();
    for tet in &m3.tetrahedra {
        args.push((sl2_c1_argument(cfg, *tet)?, 2));
    }
    BlochElement::from_args(args)
}

/// The boundary of the motivic volume as the signed face sum of triangle W
/// values; interior faces cancel in the signed sum.
pub fn volume_boundary_value(
    m3: &Triangulated3Complex,
    cfg: &FlagConfig,
    mode: TorsionMode,
) -> Result<WedgeValue> {
    let cd = cartan_data(Series::A, 1)?;
    let word = WeylWord::new(vec![0]);
    let mut acc = WedgeValue::zero(mode);
    for (face, c2) in m3.signed_faces() {
        acc = acc.add(&triangle_w_value_scaled(&cd, &word, face, cfg, c2 / 2, mode)?);
    }
    Ok(acc)
}

/// Sample distinct rational projective points (finite ones, small height).
pub fn random_distinct_points(rng: &mut ChaCha8Rng, count: usize, bound: i64) -> Vec<ProjPoint> {
    let mut seen: Vec<Rat> = Vec::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let q = rational_avoiding(rng, bound, &seen, false);
        seen.push(q.clone());
        out.push(ProjPoint::Fin(q));
    }
    out
}

/// Evaluate a rational Bloch element by the Bloch-Wigner function (zero for
/// real arguments, so useful mainly as a smoke value) -- complex five-term
/// checks instead go through [`five_term_complex_sum`].
pub fn five_term_complex_sum(points: &[Complex64; 5]) -> Result<f64> {
    let mut acc = 0.0;
    for i in 0..5 {
        let quad = [
            points[i],
            points[(i + 1) % 5],
            points[(i + 2) % 5],
            points[(i + 3) % 5],
        ];
        let r = complex_cross_ratio(&quad)?;
        acc += crate::dilog::bloch_wigner(-r);
    }
    Ok(acc)
}

pub fn complex_cross_ratio(s: &[Complex64; 4]) -> Result<Complex64> {
    let num = (s[0] - s[1]) * (s[2] - s[3]);
    let den = (s[0] - s[3]) * (s[1] - s[2]);
    if den.norm() < 1e-12 {
        return Err(Error::Degenerate("coincident points".into()));
    }
    Ok(num / den)
}

/// Fixed complex arguments for toy volume fixtures: returns the Bloch-Wigner
/// volume of `2 {e^{i pi / 3}}`.
pub fn figure_eight_volume() -> f64 {
    let z = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
    crate::dilog::volume_real(&[(z, 4)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags_sl::random_flag;
    use crate::ratutil::rat;

    fn fin(n: i64, d: i64) -> ProjPoint {
        ProjPoint::Fin(rat(n, d))
    }

    #[test]
    fn cross_ratio_normalization_and_infinity() {
        // r(inf, -1, 0, z) = z
        let z = rat(5, 3);
        let r = cross_ratio(&[
            ProjPoint::Inf,
            fin(-1, 1),
            fin(0, 1),
            ProjPoint::Fin(z.clone()),
        ])
        .unwrap();
        assert_eq!(r, z);
        // (0, 1, inf, 2) by direct substitution with projective limits
        let r = cross_ratio(&[fin(0, 1), fin(1, 1), ProjPoint::Inf, fin(2, 1)]).unwrap();
        assert_eq!(r, rat(-1, 2));
        // coincident points rejected
        assert!(cross_ratio(&[fin(1, 1), fin(1, 1), fin(0, 1), fin(2, 1)]).is_err());
    }

    #[test]
    fn cross_ratio_is_moebius_invariant() {
        let mut rng = rng_from_seed(7);
        use rand::Rng;
        for _ in 0..30 {
            let pts: Vec<Rat> = {
                let mut seen = Vec::new();
                (0..4)
                    .map(|_| {
                        let q = rational_avoiding(&mut rng, 20, &seen, false);
                        seen.push(q.clone());
                        q
                    })
                    .collect()
            };
            let quad = [
                ProjPoint::Fin(pts[0].clone()),
                ProjPoint::Fin(pts[1].clone()),
                ProjPoint::Fin(pts[2].clone()),
                ProjPoint::Fin(pts[3].clone()),
            ];
            let r = cross_ratio(&quad).unwrap();
            // random fractional-linear map with unit determinant
            let (a, b, c) = (
                int(rng.gen_range(1..4)),
                int(rng.gen_range(-3..3)),
                int(rng.gen_range(-2..3)),
            );
            // d chosen to keep ad - bc nonzero
            let mut d = int(rng.gen_range(1..5));
            if (a.clone() * d.clone() - b.clone() * c.clone()).is_zero() {
                d += int(7);
            }
            let moebius = |p: &ProjPoint| -> ProjPoint {
                let (x, y) = p.homogeneous();
                let nx = a.clone() * x.clone() + b.clone() * y.clone();
                let ny = c.clone() * x + d.clone() * y;
                if ny.is_zero() {
                    ProjPoint::Inf
                } else {
                    ProjPoint::Fin(nx / ny)
                }
            };
            let mapped = [
                moebius(&quad[0]),
                moebius(&quad[1]),
                moebius(&quad[2]),
                moebius(&quad[3]),
            ];
            if let Ok(r2) = cross_ratio(&mapped) {
                assert_eq!(r, r2);
            }
        }
    }

    #[test]
    fn bloch_delta_of_a_generator() {
        // {2} -> (-1) ^ 2
        let b = BlochElement::from_args([(int(2), 2)]).unwrap();
        let v = b.delta_value(TorsionMode::Keep).unwrap();
        assert_eq!(v.terms().count(), 1);
        // and in drop mode it is invisible
        let v = b.delta_value(TorsionMode::Drop).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn delta_of_inverse_pair() {
        // delta({x} + {1/x}) at x = 3, expanded in the wedge of Q*
        let x = int(3);
        let b = BlochElement::from_args([(x.clone(), 2), (Rat::one() / x, 2)]).unwrap();
        let direct = b.delta_value(TorsionMode::Keep).unwrap();
        // (1-3)^3 + (1-1/3)^(1/3) = (-2)^3 + (2/3)^(1/3)
        let lhs = wedge_value_of(&int(-2), &int(3), 2, TorsionMode::Keep).unwrap();
        let rhs = wedge_value_of(&rat(2, 3), &rat(1, 3), 2, TorsionMode::Keep).unwrap();
        assert_eq!(direct, lhs.add(&rhs));
    }

    #[test]
    fn five_term_is_killed_by_delta() {
        let mut rng = rng_from_seed(13);
        for _ in 0..100 {
            let pts = random_distinct_points(&mut rng, 5, 30);
            let ft = match five_term(&[
                pts[0].clone(),
                pts[1].clone(),
                pts[2].clone(),
                pts[3].clone(),
                pts[4].clone(),
            ]) {
                Ok(f) => f,
                Err(_) => continue, // an argument hit 0 or 1
            };
            let v = ft.delta_value(TorsionMode::Drop).unwrap();
            assert!(v.is_zero(), "five-term boundary does not vanish");
        }
    }

    #[test]
    fn five_term_cyclic_permutation_permutes_terms() {
        let pts: Vec<ProjPoint> = vec![fin(2, 1), fin(3, 1), fin(5, 1), fin(7, 1), fin(11, 1)];
        let a = five_term(&[
            pts[0].clone(),
            pts[1].clone(),
            pts[2].clone(),
            pts[3].clone(),
            pts[4].clone(),
        ])
        .unwrap();
        let b = five_term(&[
            pts[1].clone(),
            pts[2].clone(),
            pts[3].clone(),
            pts[4].clone(),
            pts[0].clone(),
        ])
        .unwrap();
        assert_eq!(a, b, "cyclic shift must reproduce the same multiset");
    }

    #[test]
    fn five_term_complex_d_sum_vanishes() {
        let mut rng = rng_from_seed(19);
        use rand::Rng;
        for _ in 0..100 {
            let pts: Vec<Complex64> = (0..5)
                .map(|_| Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
                .collect();
            let s = match five_term_complex_sum(&[pts[0], pts[1], pts[2], pts[3], pts[4]]) {
                Ok(s) => s,
                Err(_) => continue,
            };
            assert!(s.abs() < 1e-10, "five-term D sum = {s}");
        }
    }

    #[test]
    fn octahedron_identity_holds() {
        let report = sl2_octahedron_check(25, 101, TorsionMode::Drop).unwrap();
        assert!(report.passed, "{report}");
    }

    #[test]
    fn sl2_c1_flip_coherence() {
        let cd = cartan_data(Series::A, 1).unwrap();
        let word = WeylWord::new(vec![0]);
        let report = c1_conf4_check(&cd, &word, 10, 103, 3, TorsionMode::Drop).unwrap();
        assert!(report.passed, "{report}");
        assert_eq!(report.path_length, Some(1));
    }

    #[test]
    fn s4_signs() {
        let report = s4_sign_check(20, 107, 1e-9).unwrap();
        assert!(report.passed, "{report}");
    }

    #[test]
    fn single_tetrahedron_volume_is_the_cross_ratio_generator() {
        let mut rng = rng_from_seed(23);
        let m3 = Triangulated3Complex {
            tetrahedra: vec![[1, 2, 3, 4]],
        };
        let mut cfg = FlagConfig::new();
        for id in 1..=4u8 {
            cfg.insert(id, random_flag(&mut rng, 2, 9));
        }
        if let Ok(vol) = motivic_volume(&m3, &cfg) {
            let r2 = sl2_c1_argument(&cfg, [1, 2, 3, 4]).unwrap();
            let mut expect = BlochElement::zero();
            expect.add_term(r2, 2);
            assert_eq!(vol, expect);
        }
    }

    #[test]
    fn shared_face_cancels_in_the_signed_face_sum() {
        let m3 = Triangulated3Complex {
            tetrahedra: vec![[1, 2, 3, 4], [5, 1, 2, 3]],
        };
        let faces = m3.signed_faces();
        assert!(!faces.contains_key(&[1, 2, 3]));
        assert_eq!(faces.len(), 6);
    }

    #[test]
    fn surface_validation_rejects_overused_edges() {
        let surf = TriangulatedSurface {
            triangles: vec![[1, 2, 3], [1, 2, 4], [1, 2, 5]],
        };
        assert!(surf.validate().is_err());
    }
}
