//! Quivers: vertex decorations, frozen flags, multipliers, and a
//! skew-symmetrizable exchange matrix with entries in (1/2)Z.
//!
//! Exchange entries are stored doubled (`eps2[i][j] = 2 eps_ij`) so that all
//! arithmetic is exact integer arithmetic. The defining relation is
//! `d_i * eps_ij = -d_j * eps_ji`; constructors fill unspecified entries by
//! skew-symmetrization and validate the relation.

use crate::root_system::{
    pair_root_coroot, root_coroot_chains, simple_index, CartanData, RootChain, WeylWord,
};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Decoration of a quiver vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    /// Plain Dynkin index.
    Level(usize),
    /// Left vertex of an elementary quiver at its own letter's level.
    Left(usize),
    /// Right vertex of an elementary quiver.
    Right(usize),
    /// Extra vertex of an elementary quiver.
    Extra(usize),
    /// Vertex of the auxiliary quiver at word position k (0-based).
    HVertex(usize),
}

impl Decoration {
    /// The Dynkin level the decoration projects to.
    pub fn level(&self) -> usize {
        match self {
            Decoration::Level(i)
            | Decoration::Left(i)
            | Decoration::Right(i)
            | Decoration::Extra(i)
            | Decoration::HVertex(i) => *i,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub decoration: Decoration,
    pub frozen: bool,
    pub multiplier: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<Vertex>,
    /// Doubled exchange matrix, `eps2[i][j] = 2 eps_ij`.
    pub eps2: Vec<Vec<i64>>,
}

/// Identifications used by [`amalgamate`]: pairs of (part index, vertex index)
/// merged into one vertex, plus post-glue frozen overrides by merged id.
#[derive(Debug, Clone, Default)]
pub struct GluingPlan {
    /// Each group lists the (part, vertex) slots identified together.
    pub groups: Vec<Vec<(usize, usize)>>,
    /// Ids (of the glued quiver) to freeze/unfreeze afterwards.
    pub unfreeze: Vec<String>,
    pub freeze: Vec<String>,
}

impl Quiver {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn unfrozen(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.vertices[v].frozen).collect()
    }

    /// Validate `d_i eps2_ij = -d_j eps2_ji` and integrality of rows touching
    /// an unfrozen vertex.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.vertices[i].multiplier * self.eps2[i][j];
                let rhs = -self.vertices[j].multiplier * self.eps2[j][i];
                if lhs != rhs {
                    return Err(Error::InvalidInput(format!(
                        "skew-symmetrizability fails at ({}, {})",
                        self.vertices[i].id, self.vertices[j].id
                    )));
                }
                if (!self.vertices[i].frozen || !self.vertices[j].frozen)
                    && self.eps2[i][j] % 2 != 0
                {
                    return Err(Error::InvalidInput(format!(
                        "non-integer exchange entry between {} and {} with an unfrozen end",
                        self.vertices[i].id, self.vertices[j].id
                    )));
                }
            }
        }
        Ok(())
    }

    /// Quiver mutation at an unfrozen vertex, computed by transporting the
    /// skew form through the basis change `e_k -> -e_k`,
    /// `e_i -> e_i + [eps_ik]_+ e_k`.
    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        if self.vertices[k].frozen {
            return Err(Error::FrozenVertex(self.vertices[k].id.clone()));
        }
        let n = self.len();
        // the bilinear form (e_a, e_b) = eps_ab / d_b, held integral via the
        // common denominator D = lcm of the multipliers:
        // g[a][b] = 2 D (e_a, e_b) = eps2_ab * D / d_b
        let dlcm = self
            .vertices
            .iter()
            .fold(1i64, |acc, v| acc / num_gcd_i64(acc, v.multiplier) * v.multiplier);
        let g: Vec<Vec<i64>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.eps2[a][b] * (dlcm / self.vertices[b].multiplier))
                    .collect()
            })
            .collect();
        // basis change matrix B, column j = coordinates of e_j'
        let mut b = vec![vec![0i64; n]; n];
        for j in 0..n {
            if j == k {
                b[k][k] = -1;
            } else {
                b[j][j] = 1;
                // eps_jk = eps2[j][k] / 2; integral since k is unfrozen
                let e = self.eps2[j][k] / 2;
                b[k][j] = e.max(0);
            }
        }
        // g' = B^T g B, then eps2'_ij = g'_ij * d_j / D
        let mut gb = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for t in 0..n {
                    acc += g[i][t] * b[t][j];
                }
                gb[i][j] = acc;
            }
        }
        let mut g2 = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for t in 0..n {
                    acc += b[t][i] * gb[t][j];
                }
                g2[i][j] = acc;
            }
        }
        let mut eps2 = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let num = g2[i][j] * self.vertices[j].multiplier;
                debug_assert_eq!(num % dlcm, 0);
                eps2[i][j] = num / dlcm;
            }
        }
        let q = Quiver {
            vertices: self.vertices.clone(),
            eps2,
        };
        q.validate()?;
        Ok(q)
    }

    /// Deterministic structured-text serialization (stable field order).
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "quiver vertices={}", self.len());
        for v in &self.vertices {
            let _ = writeln!(
                out,
                "vertex id={} decoration={:?} frozen={} multiplier={}",
                v.id, v.decoration, v.frozen, v.multiplier
            );
        }
        for row in &self.eps2 {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "eps2 {}", cells.join(" "));
        }
        out
    }
}

fn num_gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd_i64(b, a % b)
    }
}

/// The elementary quiver J(i): vertex set `(I - {i}) u {i_l, i_r, i_e}` with
/// `eps_{i_l, j} = -C_ij / 2`, `eps_{i_r, j} = C_ij / 2`,
/// `eps_{i_r, i_l} = eps_{i_l, i_e} = eps_{i_e, i_r} = 1`, zero when the
/// letter is not involved, and the remaining entries filled by
/// skew-symmetrization.
pub fn elementary_quiver(cd: &CartanData, letter: usize) -> Result<Quiver> {
    if letter >= cd.rank {
        return Err(Error::InvalidInput(format!(
            "letter {} out of range",
            letter + 1
        )));
    }
    let mut vertices = Vec::new();
    // other levels first, in Dynkin order, then l, r, e
    let mut index_of_level = BTreeMap::new();
    for j in 0..cd.rank {
        if j != letter {
            index_of_level.insert(j, vertices.len());
            vertices.push(Vertex {
                id: format!("{}", j + 1),
                decoration: Decoration::Level(j),
                frozen: true,
                multiplier: cd.symmetrizers[j],
            });
        }
    }
    let il = vertices.len();
    vertices.push(Vertex {
        id: format!("{}l", letter + 1),
        decoration: Decoration::Left(letter),
        frozen: true,
        multiplier: cd.symmetrizers[letter],
    });
    let ir = vertices.len();
    vertices.push(Vertex {
        id: format!("{}r", letter + 1),
        decoration: Decoration::Right(letter),
        frozen: true,
        multiplier: cd.symmetrizers[letter],
    });
    let ie = vertices.len();
    vertices.push(Vertex {
        id: format!("{}e", letter + 1),
        decoration: Decoration::Extra(letter),
        frozen: true,
        multiplier: cd.symmetrizers[letter],
    });
    let n = vertices.len();
    let mut eps2 = vec![vec![0i64; n]; n];
    let di = cd.symmetrizers[letter];
    for (&j, &vj) in &index_of_level {
        let dj = cd.symmetrizers[j];
        // eps2_{i_l, j} = -C_ij, skew-filled eps2_{j, i_l} = d_i C_ij / d_j = C_ji
        eps2[il][vj] = -cd.cartan[letter][j];
        eps2[vj][il] = di * cd.cartan[letter][j] / dj;
        eps2[ir][vj] = cd.cartan[letter][j];
        eps2[vj][ir] = -di * cd.cartan[letter][j] / dj;
    }
    eps2[ir][il] = 2;
    eps2[il][ir] = -2;
    eps2[il][ie] = 2;
    eps2[ie][il] = -2;
    eps2[ie][ir] = 2;
    eps2[ir][ie] = -2;
    let q = Quiver { vertices, eps2 };
    q.validate()?;
    Ok(q)
}

/// The auxiliary quiver K(i): m frozen vertices, one per word position, with
/// `eps_{jk} = sgn(k - j)/2 * (alpha_j, beta_k)`.
pub fn auxiliary_quiver(cd: &CartanData, word: &WeylWord) -> Result<Quiver> {
    let chain = root_coroot_chains(cd, word)?;
    auxiliary_quiver_with_chain(cd, word, &chain)
}

pub fn auxiliary_quiver_with_chain(
    cd: &CartanData,
    word: &WeylWord,
    chain: &RootChain,
) -> Result<Quiver> {
    let m = word.len();
    let mut vertices = Vec::with_capacity(m);
    for (k, &letter) in word.letters.iter().enumerate() {
        vertices.push(Vertex {
            id: format!("h{}", k + 1),
            decoration: Decoration::HVertex(k),
            frozen: true,
            // the multiplier of beta_k's simple type equals the letter's
            multiplier: cd.symmetrizers[letter],
        });
    }
    let mut eps2 = vec![vec![0i64; m]; m];
    for j in 0..m {
        for k in 0..m {
            if j == k {
                continue;
            }
            let sgn = if k > j { 1 } else { -1 };
            eps2[j][k] = sgn * pair_root_coroot(cd, &chain.alphas[j], &chain.betas[k]);
        }
    }
    let q = Quiver { vertices, eps2 };
    q.validate()?;
    Ok(q)
}

/// H(i): the full subquiver of K(i) on positions whose beta is a simple coroot.
pub fn h_subquiver(kq: &Quiver, chain: &RootChain) -> Quiver {
    let keep: Vec<usize> = (0..kq.len())
        .filter(|&k| simple_index(&chain.betas[k]).is_some())
        .collect();
    let vertices: Vec<Vertex> = keep.iter().map(|&k| kq.vertices[k].clone()).collect();
    let eps2: Vec<Vec<i64>> = keep
        .iter()
        .map(|&j| keep.iter().map(|&k| kq.eps2[j][k]).collect())
        .collect();
    Quiver { vertices, eps2 }
}

/// Amalgamation: quotient the disjoint union of `parts` by the plan's
/// identification groups, summing exchange entries; identified vertices must
/// agree in decoration level and multiplier.
pub fn amalgamate(parts: &[Quiver], plan: &GluingPlan) -> Result<Quiver> {
    // map (part, vertex) -> merged slot
    let mut slot: Vec<Vec<Option<usize>>> =
        parts.iter().map(|p| vec![None; p.len()]).collect();
    let mut vertices: Vec<Vertex> = Vec::new();
    for group in &plan.groups {
        let (p0, v0) = group[0];
        let proto = &parts[p0].vertices[v0];
        for &(p, v) in group {
            let cand = &parts[p].vertices[v];
            if cand.decoration.level() != proto.decoration.level()
                || cand.multiplier != proto.multiplier
            {
                return Err(Error::InvalidInput(format!(
                    "cannot glue {} with {}: decoration or multiplier mismatch",
                    proto.id, cand.id
                )));
            }
        }
        let idx = vertices.len();
        vertices.push(proto.clone());
        for &(p, v) in group {
            if slot[p][v].is_some() {
                return Err(Error::InvalidInput("vertex glued twice".into()));
            }
            slot[p][v] = Some(idx);
        }
    }
    for (p, part) in parts.iter().enumerate() {
        for v in 0..part.len() {
            if slot[p][v].is_none() {
                let idx = vertices.len();
                vertices.push(part.vertices[v].clone());
                slot[p][v] = Some(idx);
            }
        }
    }
    let n = vertices.len();
    let mut eps2 = vec![vec![0i64; n]; n];
    for (p, part) in parts.iter().enumerate() {
        for a in 0..part.len() {
            for b in 0..part.len() {
                let (sa, sb) = (slot[p][a].unwrap(), slot[p][b].unwrap());
                eps2[sa][sb] += part.eps2[a][b];
            }
        }
    }
    let mut q = Quiver { vertices, eps2 };
    for id in &plan.unfreeze {
        let i = q
            .vertex_index(id)
            .ok_or_else(|| Error::LabelNotFound(id.clone()))?;
        q.vertices[i].frozen = false;
    }
    for id in &plan.freeze {
        let i = q
            .vertex_index(id)
            .ok_or_else(|| Error::LabelNotFound(id.clone()))?;
        q.vertices[i].frozen = true;
    }
    q.validate()?;
    Ok(q)
}

/// Positional description of the triangle quiver Q(i) used to attach
/// coordinate labels: per level, the vertex indices left to right; the kept
/// e-vertices with their word position and beta letter.
#[derive(Debug, Clone)]
pub struct TriangleShape {
    /// `rows[level][t]` = vertex index of slot t at this level.
    pub rows: Vec<Vec<usize>>,
    /// For each kept extra vertex: (vertex index, word position k, beta letter j).
    pub extras: Vec<(usize, usize, usize)>,
    /// For interior slots: `chain_pos[vertex] = p` means the label is the
    /// chain coordinate A_p (1-based position in the word).
    pub chain_pos: BTreeMap<usize, usize>,
}

/// The amalgamated quiver Q(i) = J(i_1) * ... * J(i_m) * H(i): consecutive
/// elementary quivers glued along shared levels, the extra vertex of J(i_k)
/// glued with the k-th H vertex when beta_k is simple and dropped otherwise.
/// Unfrozen part: everything except the leftmost/rightmost slot per level and
/// the extra vertices.
pub fn build_triangle_quiver(cd: &CartanData, word: &WeylWord) -> Result<(Quiver, TriangleShape)> {
    crate::root_system::check_w0_word(cd, word)?;
    let chain = root_coroot_chains(cd, word)?;
    let m = word.len();
    let r = cd.rank;

    // slot layout per level: occurrences of the level letter split the row
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); r]; // word positions per level
    for (k, &l) in word.letters.iter().enumerate() {
        occurrences[l].push(k);
    }

    let mut vertices: Vec<Vertex> = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); r];
    for level in 0..r {
        let slots = occurrences[level].len() + 1;
        for t in 0..slots {
            let idx = vertices.len();
            let frozen = t == 0 || t == slots - 1;
            vertices.push(Vertex {
                id: format!("v{}.{}", level + 1, t),
                decoration: Decoration::Level(level),
                frozen,
                multiplier: cd.symmetrizers[level],
            });
            rows[level].push(idx);
        }
    }
    let mut extras: Vec<(usize, usize, usize)> = Vec::new();
    let mut extra_of_pos: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..m {
        if let Some(j) = simple_index(&chain.betas[k]) {
            let idx = vertices.len();
            vertices.push(Vertex {
                id: format!("e{}", k + 1),
                decoration: Decoration::Extra(j),
                frozen: true,
                multiplier: cd.symmetrizers[j],
            });
            extras.push((idx, k, j));
            extra_of_pos.insert(k, idx);
        }
    }

    let n = vertices.len();
    let mut eps2 = vec![vec![0i64; n]; n];

    // glue the elementary quivers: piece k occupies, at each level, the slot
    // whose chain interval contains positions [k, k+1); at its own letter's
    // level it has the left vertex at the slot ending before position k and
    // the right vertex at the slot starting at position k.
    let slot_at = |level: usize, p: usize| -> usize {
        // slot index at `level` covering chain position p (0..=m)
        occurrences[level].iter().filter(|&&q| q < p).count()
    };
    for k in 0..m {
        let letter = word.letters[k];
        let piece = elementary_quiver(cd, letter)?;
        // map piece vertex -> global vertex
        let mut map = vec![0usize; piece.len()];
        for (pv, vert) in piece.vertices.iter().enumerate() {
            map[pv] = match vert.decoration {
                Decoration::Level(j) => rows[j][slot_at(j, k)],
                Decoration::Left(_) => rows[letter][slot_at(letter, k)],
                Decoration::Right(_) => rows[letter][slot_at(letter, k + 1)],
                Decoration::Extra(_) => match extra_of_pos.get(&k) {
                    Some(&idx) => idx,
                    None => usize::MAX, // dropped, beta_k not simple
                },
                Decoration::HVertex(_) => unreachable!(),
            };
        }
        for a in 0..piece.len() {
            for b in 0..piece.len() {
                if map[a] != usize::MAX && map[b] != usize::MAX {
                    eps2[map[a]][map[b]] += piece.eps2[a][b];
                }
            }
        }
    }
    // H part between kept extra vertices
    let kq = auxiliary_quiver_with_chain(cd, word, &chain)?;
    for &(ia, ka, _) in &extras {
        for &(ib, kb, _) in &extras {
            eps2[ia][ib] += kq.eps2[ka][kb];
        }
    }

    let q = Quiver { vertices, eps2 };
    q.validate()?;
    let mut chain_pos = BTreeMap::new();
    for level in 0..r {
        for (t, &occ) in occurrences[level].iter().enumerate() {
            // slot t+1 starts at word position occ: its label is A_{occ+1}
            chain_pos.insert(rows[level][t + 1], occ + 1);
        }
    }
    Ok((
        q,
        TriangleShape {
            rows,
            extras,
            chain_pos,
        },
    ))
}

/// DOT export. Solid arrows for integer weights, dashed for half weights,
/// bold red for arrows between vertices of unequal multiplier.
pub fn export_dot(q: &Quiver) -> String {
    let mut out = String::from("digraph quiver {\n");
    for v in &q.vertices {
        let shape = if v.frozen { "box" } else { "circle" };
        let _ = writeln!(
            out,
            "  \"{}\" [shape={}, label=\"{} (d={})\"];",
            v.id, shape, v.id, v.multiplier
        );
    }
    for i in 0..q.len() {
        for j in 0..q.len() {
            let w2 = q.eps2[i][j];
            if w2 > 0 {
                let mut style: Vec<String> = Vec::new();
                if w2 % 2 != 0 {
                    style.push("style=dashed".into());
                } else {
                    style.push("style=solid".into());
                }
                if q.vertices[i].multiplier != q.vertices[j].multiplier {
                    style.push("color=red".into());
                    style.push("penwidth=2".into());
                }
                if w2 != 1 && w2 != 2 {
                    style.push(format!("label=\"{}\"", (w2 as f64) / 2.0));
                }
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [{}];",
                    q.vertices[i].id,
                    q.vertices[j].id,
                    style.join(", ")
                );
            }
        }
    }
    out.push_str("}\n");
    out
}
