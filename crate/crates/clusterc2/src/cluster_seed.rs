//! Seeds: quivers together with cluster coordinate labels.
//!
//! Labels are expression trees over atomic coordinates (Delta-minors of flag
//! pairs, chain coordinates, or abstract tokens). Mutation rewrites the label
//! at the mutated vertex by the exchange relation; everything else is shared
//! structurally, so seeds are cheap to clone and labels are evaluated lazily
//! at a configuration by the flags layer.
//!
//! The canonical element of a seed is stored with the orientation of the
//! rank-one triangle, under which it reads
//! `D12 ^ D13 + D13 ^ D23 + D23 ^ D12`; this is the negative of the raw
//! `1/2 sum d_i eps_ij A_i ^ A_j` read off the quiver matrices. The two
//! conventions are mirror images; the residue and Steinberg identities hold
//! verbatim in the one used here.

use crate::k2_wedge::WedgeElement;
use crate::quiver::{amalgamate, build_triangle_quiver, GluingPlan, Quiver};
use crate::root_system::{star_involution, CartanData, WeylWord};
use crate::{Error, Rat, Result};
use num::traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;

/// Atomic cluster coordinate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordLabel {
    /// `Delta_level(F_a, F_b)` for global flag ids a, b.
    Edge { level: usize, a: u8, b: u8 },
    /// Chain coordinate `A_p` (p = 1..m) of the triangle with the given
    /// global flag ids; `level` is the word letter at position p.
    Chain { tri: [u8; 3], p: usize, level: usize },
    /// Abstract token.
    Token(String),
}

impl fmt::Display for CoordLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordLabel::Edge { level, a, b } => write!(f, "D{}(F{},F{})", level + 1, a, b),
            CoordLabel::Chain { tri, p, .. } => {
                write!(f, "A{}[{}{}{}]", p, tri[0], tri[1], tri[2])
            }
            CoordLabel::Token(s) => write!(f, "{s}"),
        }
    }
}

/// A cluster coordinate as an expression over atomic labels.
#[derive(Debug)]
pub enum ExprNode {
    Atom(CoordLabel),
    /// `(prod plus + prod minus) / denom`, the exchange relation.
    Exchange {
        plus: Vec<(Expr, i64)>,
        minus: Vec<(Expr, i64)>,
        denom: Expr,
    },
}

pub type Expr = Rc<ExprNode>;

pub fn atom(label: CoordLabel) -> Expr {
    Rc::new(ExprNode::Atom(label))
}

impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprNode::Atom(l) => write!(f, "{l}"),
            ExprNode::Exchange { plus, minus, denom } => {
                let side = |v: &Vec<(Expr, i64)>| -> String {
                    if v.is_empty() {
                        "1".to_string()
                    } else {
                        v.iter()
                            .map(|(e, x)| format!("({e})^{x}"))
                            .collect::<Vec<_>>()
                            .join("*")
                    }
                };
                write!(f, "(({}+{}))/({})", side(plus), side(minus), denom)
            }
        }
    }
}

/// Evaluate an expression with memoization over shared nodes.
pub fn eval_expr(
    expr: &Expr,
    atoms: &mut dyn FnMut(&CoordLabel) -> Result<Rat>,
    memo: &mut BTreeMap<usize, Rat>,
) -> Result<Rat> {
    let key = Rc::as_ptr(expr) as usize;
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let value = match expr.as_ref() {
        ExprNode::Atom(l) => atoms(l)?,
        ExprNode::Exchange { plus, minus, denom } => {
            let mut acc_plus = crate::ratutil::int(1);
            for (e, x) in plus {
                let v = eval_expr(e, atoms, memo)?;
                acc_plus *= crate::k2_wedge::rat_pow(&v, *x);
            }
            let mut acc_minus = crate::ratutil::int(1);
            for (e, x) in minus {
                let v = eval_expr(e, atoms, memo)?;
                acc_minus *= crate::k2_wedge::rat_pow(&v, *x);
            }
            let d = eval_expr(denom, atoms, memo)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero(format!("{denom}")));
            }
            (acc_plus + acc_minus) / d
        }
    };
    memo.insert(key, value.clone());
    Ok(value)
}

/// A monomial in expressions with integer exponents.
pub type Monomial = Vec<(Expr, i64)>;

pub fn eval_monomial(
    m: &Monomial,
    atoms: &mut dyn FnMut(&CoordLabel) -> Result<Rat>,
    memo: &mut BTreeMap<usize, Rat>,
) -> Result<Rat> {
    let mut acc = crate::ratutil::int(1);
    for (e, x) in m {
        let v = eval_expr(e, atoms, memo)?;
        if v.is_zero() {
            return Err(Error::DivisionByZero(format!("{e}")));
        }
        acc *= crate::k2_wedge::rat_pow(&v, *x);
    }
    Ok(acc)
}

/// A quiver with one coordinate label per vertex.
#[derive(Clone)]
pub struct Seed {
    pub cd: CartanData,
    pub word: WeylWord,
    pub quiver: Quiver,
    pub labels: Vec<Expr>,
}

impl fmt::Debug for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seed({} vertices)", self.quiver.len())
    }
}

impl Seed {
    /// All labels that are atoms, by vertex.
    pub fn atomic_labels(&self) -> Option<Vec<CoordLabel>> {
        self.labels
            .iter()
            .map(|e| match e.as_ref() {
                ExprNode::Atom(l) => Some(l.clone()),
                _ => None,
            })
            .collect()
    }

    /// Evaluate every label at an atom assignment.
    pub fn evaluate_labels(
        &self,
        atoms: &mut dyn FnMut(&CoordLabel) -> Result<Rat>,
    ) -> Result<Vec<Rat>> {
        let mut memo = BTreeMap::new();
        self.labels
            .iter()
            .map(|e| eval_expr(e, atoms, &mut memo))
            .collect()
    }

    /// Structured-text serialization: the quiver followed by the labels.
    pub fn serialize(&self) -> String {
        let mut out = self.quiver.serialize();
        for (v, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("label {} {}\n", self.quiver.vertices[v].id, l));
        }
        out
    }
}

/// The triangle seed: the amalgamated quiver Q(i) with the frozen edge
/// coordinates `Delta_i(F_a, F_b)` on the three sides and the chain
/// coordinates `A_p` inside.
pub fn triangle_seed(cd: &CartanData, word: &WeylWord, tri: [u8; 3]) -> Result<Seed> {
    let (quiver, shape) = build_triangle_quiver(cd, word)?;
    let mut labels: Vec<Option<Expr>> = vec![None; quiver.len()];
    let [fa, fb, fc] = tri;
    for (level, row) in shape.rows.iter().enumerate() {
        let last = row.len() - 1;
        for (t, &v) in row.iter().enumerate() {
            let label = if t == 0 {
                CoordLabel::Edge { level, a: fa, b: fb }
            } else if t == last {
                CoordLabel::Edge { level, a: fa, b: fc }
            } else {
                CoordLabel::Chain {
                    tri,
                    p: shape.chain_pos[&v],
                    level,
                }
            };
            labels[v] = Some(atom(label));
        }
    }
    for &(v, _k, j) in &shape.extras {
        labels[v] = Some(atom(CoordLabel::Edge {
            level: j,
            a: fb,
            b: fc,
        }));
    }
    let labels: Vec<Expr> = labels.into_iter().map(|o| o.unwrap()).collect();
    Ok(Seed {
        cd: cd.clone(),
        word: word.clone(),
        quiver,
        labels,
    })
}

/// The monomial `X_k = prod_j A_j^{eps_kj}` attached to mutation at `k`,
/// exponents read off row k of the exchange matrix.
pub fn xhat(seed: &Seed, k: usize) -> Result<Monomial> {
    if seed.quiver.vertices[k].frozen {
        return Err(Error::FrozenVertex(seed.quiver.vertices[k].id.clone()));
    }
    let mut mono = Vec::new();
    for j in 0..seed.quiver.len() {
        let e2 = seed.quiver.eps2[k][j];
        if e2 != 0 {
            if e2 % 2 != 0 {
                return Err(Error::HalfIntegerResidue(format!(
                    "unfrozen row {k} has a half-integer exponent"
                )));
            }
            mono.push((seed.labels[j].clone(), e2 / 2));
        }
    }
    Ok(mono)
}

/// Exchange transformation: mutate the quiver and replace the label at `k` by
/// `(prod_{eps_ik > 0} A_i^{eps_ik} + prod_{eps_ik < 0} A_i^{-eps_ik}) / A_k`.
pub fn a_mutation(seed: &Seed, k: usize) -> Result<Seed> {
    let quiver = seed.quiver.mutate(k)?;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for i in 0..seed.quiver.len() {
        let e2 = seed.quiver.eps2[i][k];
        if e2 > 0 {
            plus.push((seed.labels[i].clone(), e2 / 2));
        } else if e2 < 0 {
            minus.push((seed.labels[i].clone(), -e2 / 2));
        }
    }
    let mut labels = seed.labels.clone();
    labels[k] = Rc::new(ExprNode::Exchange {
        plus,
        minus,
        denom: seed.labels[k].clone(),
    });
    Ok(Seed {
        cd: seed.cd.clone(),
        word: seed.word.clone(),
        quiver,
        labels,
    })
}

/// The canonical wedge element of a seed over vertex indices, in the
/// triangle orientation: the coefficient of `A_i ^ A_j` (i < j) is
/// `-d_i eps_ij`.
pub fn w_element(seed: &Seed) -> WedgeElement<usize> {
    let mut w = WedgeElement::zero();
    let n = seed.quiver.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let c2 = -seed.quiver.vertices[i].multiplier * seed.quiver.eps2[i][j];
            w.add_term(i, j, c2);
        }
    }
    w
}

/// The same element keyed by atomic labels; only defined for unmutated seeds.
pub fn w_element_labeled(seed: &Seed) -> Result<WedgeElement<CoordLabel>> {
    let atoms = seed
        .atomic_labels()
        .ok_or_else(|| Error::InvalidInput("seed has non-atomic labels".into()))?;
    Ok(w_element(seed).map_labels(|&v| atoms[v].clone()))
}

/// `C2` of a type and reduced word: the canonical element of the triangle
/// seed on the standard flag triple (1, 2, 3).
pub fn c2_element(cd: &CartanData, word: &WeylWord) -> Result<WedgeElement<CoordLabel>> {
    let seed = triangle_seed(cd, word, [1, 2, 3])?;
    w_element_labeled(&seed)
}

/// Both sides of the mutation identity at `k`: the mutated seed (so the
/// caller can form `W' - W`) together with the Steinberg term
/// `d_k (1 + X_k) ^ X_k` in the source seed's coordinates.
pub struct SteinbergDelta {
    pub mutated: Seed,
    pub d_k: i64,
    pub xhat: Monomial,
}

pub fn steinberg_delta(seed: &Seed, k: usize) -> Result<SteinbergDelta> {
    let xh = xhat(seed, k)?;
    let mutated = a_mutation(seed, k)?;
    Ok(SteinbergDelta {
        mutated,
        d_k: seed.quiver.vertices[k].multiplier,
        xhat: xh,
    })
}

/// Glue two seeds along all pairs of equal atomic edge labels, unfreezing the
/// identified vertices (the shared diagonal of a rectangle).
pub fn glue_seeds(s1: &Seed, s2: &Seed) -> Result<Seed> {
    let a1 = s1
        .atomic_labels()
        .ok_or_else(|| Error::InvalidInput("gluing requires atomic labels".into()))?;
    let a2 = s2
        .atomic_labels()
        .ok_or_else(|| Error::InvalidInput("gluing requires atomic labels".into()))?;
    let mut groups = Vec::new();
    let mut unfreeze = Vec::new();
    for (v1, l1) in a1.iter().enumerate() {
        if let Some(v2) = a2.iter().position(|l2| l2 == l1) {
            groups.push(vec![(0usize, v1), (1usize, v2)]);
            unfreeze.push(s1.quiver.vertices[v1].id.clone());
        }
    }
    if groups.is_empty() {
        return Err(Error::InvalidInput("no shared labels to glue".into()));
    }
    // ids may collide across the two quivers; rename the second copy
    let mut q2 = s2.quiver.clone();
    for v in q2.vertices.iter_mut() {
        v.id = format!("{}'", v.id);
    }
    let plan = GluingPlan {
        groups: groups.clone(),
        unfreeze,
        freeze: vec![],
    };
    let glued = amalgamate(&[s1.quiver.clone(), q2], &plan)?;
    // labels follow amalgamate's layout: merged groups first, then leftovers
    let mut labels: Vec<Expr> = Vec::with_capacity(glued.len());
    let mut used1 = vec![false; a1.len()];
    let mut used2 = vec![false; a2.len()];
    for g in &groups {
        let (_, v1) = g[0];
        let (_, v2) = g[1];
        used1[v1] = true;
        used2[v2] = true;
        labels.push(s1.labels[v1].clone());
    }
    for (v, u) in used1.iter().enumerate() {
        if !u {
            labels.push(s1.labels[v].clone());
        }
    }
    for (v, u) in used2.iter().enumerate() {
        if !u {
            labels.push(s2.labels[v].clone());
        }
    }
    debug_assert_eq!(labels.len(), glued.len());
    Ok(Seed {
        cd: s1.cd.clone(),
        word: s1.word.clone(),
        quiver: glued,
        labels,
    })
}

/// The two rectangle seeds on four flags: `c_13` amalgamates triangles
/// (F2, F3, F4) and (F1, F2, F4) along the diagonal (F2, F4); `c_24`
/// amalgamates (F1, F2, F3) and (F1, F3, F4) along (F1, F3). Returned in the
/// order (c_13, c_24).
pub fn conf4_seeds(cd: &CartanData, word: &WeylWord) -> Result<(Seed, Seed)> {
    let t234 = triangle_seed(cd, word, [2, 3, 4])?;
    let t124 = triangle_seed(cd, word, [1, 2, 4])?;
    let c13 = glue_seeds(&t234, &t124)?;
    let t123 = triangle_seed(cd, word, [1, 2, 3])?;
    let t134 = triangle_seed(cd, word, [1, 3, 4])?;
    let c24 = glue_seeds(&t123, &t134)?;
    Ok((c13, c24))
}

/// One step of a mutation path: the seed before the step, the vertex
/// mutated, and the exchange monomial in that seed's coordinates.
pub struct MutationStep {
    pub seed: Seed,
    pub vertex: usize,
    pub xhat: Monomial,
}

pub struct MutationPath {
    pub steps: Vec<MutationStep>,
    pub end: Seed,
}

impl MutationPath {
    pub fn vertex_list(&self) -> Vec<String> {
        self.steps
            .iter()
            .map(|s| s.seed.quiver.vertices[s.vertex].id.clone())
            .collect()
    }
}

/// Breadth-first search for a mutation path from one seed to another. Seed
/// equality is decided by a numeric fingerprint (labels evaluated at a fixed
/// configuration, supplied by the caller) plus quiver isomorphism respecting
/// frozen flags and multipliers, re-checked with a second fingerprint.
pub fn find_mutation_path(
    from: &Seed,
    to: &Seed,
    max_depth: usize,
    fingerprint1: &mut dyn FnMut(&Seed) -> Result<Vec<Rat>>,
    fingerprint2: &mut dyn FnMut(&Seed) -> Result<Vec<Rat>>,
) -> Result<Option<MutationPath>> {
    let target1 = fingerprint1(to)?;
    let target2 = fingerprint2(to)?;

    let key_of = |fp: &[Rat]| -> Vec<String> {
        let mut v: Vec<String> = fp.iter().map(|r| r.to_string()).collect();
        v.sort();
        v
    };
    let target_key = key_of(&target1);

    struct Node {
        seed: Seed,
        parent: Option<(usize, usize)>, // (node index, mutated vertex)
    }

    // match `cand` against `to` by pairing equal fingerprint values and
    // checking the exchange data under the induced bijection
    let mut matches_target = |cand: &Seed,
                              fp1: &[Rat],
                              fingerprint2: &mut dyn FnMut(&Seed) -> Result<Vec<Rat>>|
     -> Result<bool> {
        let n = cand.quiver.len();
        if n != to.quiver.len() {
            return Ok(false);
        }
        let mut perm = vec![usize::MAX; n]; // cand vertex -> target vertex
        let mut taken = vec![false; n];
        for i in 0..n {
            let mut found = false;
            for (j, t) in taken.iter_mut().enumerate() {
                if !*t && target1[j] == fp1[i] {
                    perm[i] = j;
                    *t = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        for i in 0..n {
            let ti = perm[i];
            if cand.quiver.vertices[i].frozen != to.quiver.vertices[ti].frozen
                || cand.quiver.vertices[i].multiplier != to.quiver.vertices[ti].multiplier
            {
                return Ok(false);
            }
            for j in 0..n {
                if cand.quiver.eps2[i][j] != to.quiver.eps2[perm[i]][perm[j]] {
                    return Ok(false);
                }
            }
        }
        // confirm at the second configuration
        let fp2 = fingerprint2(cand)?;
        for i in 0..n {
            if fp2[i] != target2[perm[i]] {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let reconstruct = |nodes: &[Node], mut at: usize| -> Result<MutationPath> {
        let mut rev: Vec<usize> = Vec::new();
        while let Some((p, v)) = nodes[at].parent {
            rev.push(v);
            at = p;
        }
        rev.reverse();
        let mut steps = Vec::new();
        let mut cur = nodes[0].seed.clone();
        for v in rev {
            let xh = xhat(&cur, v)?;
            let next = a_mutation(&cur, v)?;
            steps.push(MutationStep {
                seed: cur,
                vertex: v,
                xhat: xh,
            });
            cur = next;
        }
        Ok(MutationPath { steps, end: cur })
    };

    let fp0 = fingerprint1(from)?;
    if matches_target(from, &fp0, fingerprint2)? {
        return Ok(Some(MutationPath {
            steps: vec![],
            end: from.clone(),
        }));
    }

    let mut nodes: Vec<Node> = vec![Node {
        seed: from.clone(),
        parent: None,
    }];
    let mut frontier: Vec<usize> = vec![0];
    let mut seen: std::collections::HashSet<Vec<String>> = std::collections::HashSet::new();
    seen.insert(key_of(&fp0));

    for _depth in 0..max_depth {
        let mut next_frontier = Vec::new();
        for fi in 0..frontier.len() {
            let ni = frontier[fi];
            let unfrozen = nodes[ni].seed.quiver.unfrozen();
            for k in unfrozen {
                let cand = match a_mutation(&nodes[ni].seed, k) {
                    Ok(c) => c,
                    Err(_) => continue,
                };
                let fp = match fingerprint1(&cand) {
                    Ok(f) => f,
                    Err(_) => continue, // degenerate evaluation on this branch
                };
                let key = key_of(&fp);
                if seen.contains(&key) {
                    continue;
                }
                let hit = key == target_key && matches_target(&cand, &fp, fingerprint2)?;
                nodes.push(Node {
                    seed: cand,
                    parent: Some((ni, k)),
                });
                if hit {
                    return reconstruct(&nodes, nodes.len() - 1).map(Some);
                }
                seen.insert(key);
                next_frontier.push(nodes.len() - 1);
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(None)
}

/// The element `C1 = sum_k d_k {-X_k}` of a mutation path, as the list of
/// (multiplier, exchange monomial) pairs; the Bloch argument of step k is
/// minus the value of the monomial.
pub fn c1_element(path: &MutationPath) -> Vec<(i64, Monomial)> {
    path.steps
        .iter()
        .map(|s| (s.seed.quiver.vertices[s.vertex].multiplier, s.xhat.clone()))
        .collect()
}

/// The starred word `i*` used by the chain labels.
pub fn starred_word(cd: &CartanData, word: &WeylWord) -> Result<WeylWord> {
    let star = star_involution(cd, word)?;
    Ok(WeylWord::new(
        word.letters.iter().map(|&l| star[l]).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratutil::int;
    use crate::root_system::{cartan_data, longest_word, Series};

    fn a1_triangle() -> Seed {
        let cd = cartan_data(Series::A, 1).unwrap();
        triangle_seed(&cd, &WeylWord::new(vec![0]), [1, 2, 3]).unwrap()
    }

    #[test]
    fn a1_triangle_reproduces_the_three_term_element() {
        let seed = a1_triangle();
        let w = w_element_labeled(&seed).unwrap();
        let d12 = CoordLabel::Edge { level: 0, a: 1, b: 2 };
        let d13 = CoordLabel::Edge { level: 0, a: 1, b: 3 };
        let d23 = CoordLabel::Edge { level: 0, a: 2, b: 3 };
        let expected = WedgeElement::from_terms([
            (d12.clone(), d13.clone(), 2),
            (d13.clone(), d23.clone(), 2),
            (d23.clone(), d12.clone(), 2),
        ]);
        assert_eq!(w, expected);
    }

    #[test]
    fn empty_quiver_gives_zero_element() {
        let cd = cartan_data(Series::A, 1).unwrap();
        let seed = Seed {
            cd,
            word: WeylWord::new(vec![]),
            quiver: Quiver {
                vertices: vec![],
                eps2: vec![],
            },
            labels: vec![],
        };
        assert!(w_element(&seed).is_zero());
    }

    #[test]
    fn doubled_w_is_integral_with_halves_only_on_frozen_pairs() {
        let cd = cartan_data(Series::A, 2).unwrap();
        let seed = triangle_seed(&cd, &WeylWord::new(vec![0, 1, 0]), [1, 2, 3]).unwrap();
        let w = w_element(&seed);
        for (&i, &j, c2) in w.terms() {
            let frozen_pair = seed.quiver.vertices[i].frozen && seed.quiver.vertices[j].frozen;
            if !frozen_pair {
                assert_eq!(c2 % 2, 0, "half coefficient off the frozen block");
            }
        }
    }

    #[test]
    fn numeric_rank2_mutation_example() {
        // arrows 1 -> 2, values (2, 3): mutating at 1 gives (3 + 1)/2 = 2
        let cd = cartan_data(Series::A, 2).unwrap();
        let quiver = Quiver {
            vertices: vec![
                crate::quiver::Vertex {
                    id: "1".into(),
                    decoration: crate::quiver::Decoration::Level(0),
                    frozen: false,
                    multiplier: 1,
                },
                crate::quiver::Vertex {
                    id: "2".into(),
                    decoration: crate::quiver::Decoration::Level(1),
                    frozen: false,
                    multiplier: 1,
                },
            ],
            eps2: vec![vec![0, 2], vec![-2, 0]],
        };
        let seed = Seed {
            cd,
            word: WeylWord::new(vec![]),
            labels: vec![
                atom(CoordLabel::Token("x1".into())),
                atom(CoordLabel::Token("x2".into())),
            ],
            quiver,
        };
        let mutated = a_mutation(&seed, 0).unwrap();
        let mut assign = |l: &CoordLabel| -> crate::Result<Rat> {
            Ok(match l {
                CoordLabel::Token(s) if s == "x1" => int(2),
                CoordLabel::Token(s) if s == "x2" => int(3),
                _ => unreachable!(),
            })
        };
        let values = mutated.evaluate_labels(&mut assign).unwrap();
        assert_eq!(values[0], int(2));
        assert_eq!(values[1], int(3));
        // double mutation restores the original values
        let back = a_mutation(&mutated, 0).unwrap();
        let values = back.evaluate_labels(&mut assign).unwrap();
        assert_eq!(values[0], int(2));
        assert_eq!(values[1], int(3));
    }

    #[test]
    fn xhat_exponents_are_the_matrix_row() {
        let cd = cartan_data(Series::A, 2).unwrap();
        let seed = triangle_seed(&cd, &WeylWord::new(vec![0, 1, 0]), [1, 2, 3]).unwrap();
        let center = seed.quiver.unfrozen()[0];
        let mono = xhat(&seed, center).unwrap();
        let mut exps: BTreeMap<String, i64> = BTreeMap::new();
        for (e, x) in &mono {
            exps.insert(format!("{e}"), *x);
        }
        for j in 0..seed.quiver.len() {
            let e2 = seed.quiver.eps2[center][j];
            if e2 != 0 {
                assert_eq!(exps[&format!("{}", seed.labels[j])], e2 / 2);
            }
        }
        // frozen vertex rejected
        let frozen = (0..seed.quiver.len())
            .find(|&v| seed.quiver.vertices[v].frozen)
            .unwrap();
        assert!(xhat(&seed, frozen).is_err());
    }

    #[test]
    fn isolated_vertex_has_unit_xhat() {
        let cd = cartan_data(Series::A, 1).unwrap();
        let quiver = Quiver {
            vertices: vec![crate::quiver::Vertex {
                id: "1".into(),
                decoration: crate::quiver::Decoration::Level(0),
                frozen: false,
                multiplier: 1,
            }],
            eps2: vec![vec![0]],
        };
        let seed = Seed {
            cd,
            word: WeylWord::new(vec![]),
            labels: vec![atom(CoordLabel::Token("x".into()))],
            quiver,
        };
        assert!(xhat(&seed, 0).unwrap().is_empty());
    }

    #[test]
    fn conf4_seed_shapes() {
        let cd = cartan_data(Series::A, 1).unwrap();
        let (c13, c24) = conf4_seeds(&cd, &WeylWord::new(vec![0])).unwrap();
        for s in [&c13, &c24] {
            assert_eq!(s.quiver.len(), 5);
            assert_eq!(s.quiver.unfrozen().len(), 1);
        }
        // the unfrozen labels are the two diagonals
        let diag13 = &c13.labels[c13.quiver.unfrozen()[0]];
        let diag24 = &c24.labels[c24.quiver.unfrozen()[0]];
        assert_eq!(format!("{diag13}"), "D1(F2,F4)");
        assert_eq!(format!("{diag24}"), "D1(F1,F3)");

        let a2 = cartan_data(Series::A, 2).unwrap();
        let (c13, c24) = conf4_seeds(&a2, &WeylWord::new(vec![0, 1, 0])).unwrap();
        assert_eq!(c13.quiver.len(), 12);
        assert_eq!(c24.quiver.len(), 12);
        assert_eq!(c13.quiver.unfrozen().len(), 4);
        assert_eq!(c24.quiver.unfrozen().len(), 4);
    }

    #[test]
    fn sl2_conf4_xhat_is_the_cross_ratio_monomial() {
        let cd = cartan_data(Series::A, 1).unwrap();
        let (_, c24) = conf4_seeds(&cd, &WeylWord::new(vec![0])).unwrap();
        let k = c24.quiver.unfrozen()[0];
        let mono = xhat(&c24, k).unwrap();
        let mut exps: BTreeMap<String, i64> = BTreeMap::new();
        for (e, x) in &mono {
            exps.insert(format!("{e}"), *x);
        }
        assert_eq!(exps["D1(F1,F2)"], 1);
        assert_eq!(exps["D1(F3,F4)"], 1);
        assert_eq!(exps["D1(F1,F4)"], -1);
        assert_eq!(exps["D1(F2,F3)"], -1);
    }

    #[test]
    fn laurent_property_probabilistic() {
        // evaluate initial labels at distinct primes; any value produced by
        // up to three mutations must have its denominator supported on those
        // primes
        let primes: [i64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
        for (series, rank, word) in [
            (Series::A, 2, WeylWord::new(vec![0, 1, 0])),
            (Series::B, 2, WeylWord::new(vec![0, 1, 0, 1])),
        ] {
            let cd = cartan_data(series, rank).unwrap();
            assert_eq!(word.len(), cd.num_positive_roots);
            let seed = triangle_seed(&cd, &word, [1, 2, 3]).unwrap();
            let atoms0 = seed.atomic_labels().unwrap();
            let mut assign = |l: &CoordLabel| -> crate::Result<Rat> {
                let idx = atoms0.iter().position(|a| a == l).unwrap();
                Ok(int(primes[idx]))
            };
            let unfrozen = seed.quiver.unfrozen();
            // all mutation sequences of length <= 3
            let mut stack = vec![(seed.clone(), 0usize)];
            while let Some((s, depth)) = stack.pop() {
                if depth >= 3 {
                    continue;
                }
                for &k in &unfrozen {
                    let m = a_mutation(&s, k).unwrap();
                    let vals = m.evaluate_labels(&mut assign).unwrap();
                    for v in &vals {
                        let f = crate::k2_wedge::factor(v).unwrap();
                        for (&p, &e) in f.exponents.iter() {
                            if e < 0 {
                                assert!(
                                    primes.contains(&(p as i64)),
                                    "denominator prime {p} outside the initial cluster"
                                );
                            }
                        }
                    }
                    stack.push((m, depth + 1));
                }
            }
        }
    }

    #[test]
    fn b3_triangle_seed_builds_from_longest_word() {
        let b3 = cartan_data(Series::B, 3).unwrap();
        let w = longest_word(&b3).unwrap();
        let seed = triangle_seed(&b3, &w, [1, 2, 3]).unwrap();
        assert_eq!(seed.quiver.len(), 15);
    }
}
