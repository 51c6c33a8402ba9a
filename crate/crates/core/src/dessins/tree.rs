//! Bicolored weighted plane trees and the constructive realizability
//! algorithm: a zero-sum integer tuple satisfying k (r-1) <= n is realized
//! as a tree whose signed valencies are exactly the tuple, and a tree is
//! expanded back into a generating system by splitting weighted edges into
//! parallel strands.

use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use super::perm::{CycleType, GeneratingSystem, Permutation};
use crate::error::DessinError;
use crate::types::{realizable, LiftedType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub black: usize,
    pub white: usize,
    pub weight: u64,
}

/// A connected bipartite tree with positive integer edge weights and a
/// cyclic order of incident edges at every vertex. The valency of a vertex
/// is the sum of its incident weights; black vertices count positive,
/// white negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPlaneTree {
    colors: Vec<Color>,
    edges: Vec<TreeEdge>,
    rotations: Vec<Vec<usize>>,
}

impl WeightedPlaneTree {
    pub fn new(
        colors: Vec<Color>,
        edges: Vec<TreeEdge>,
        rotations: Vec<Vec<usize>>,
    ) -> Result<WeightedPlaneTree, DessinError> {
        let v = colors.len();
        if rotations.len() != v {
            return Err(DessinError::InvalidTree(
                "one rotation list per vertex required".into(),
            ));
        }
        if v == 0 || edges.len() + 1 != v {
            return Err(DessinError::InvalidTree(format!(
                "{} vertices and {} edges do not form a tree",
                v,
                edges.len()
            )));
        }
        let mut incident = vec![Vec::new(); v];
        for (id, e) in edges.iter().enumerate() {
            if e.black >= v || e.white >= v {
                return Err(DessinError::InvalidTree(
                    "edge endpoint out of range".into(),
                ));
            }
            if colors[e.black] != Color::Black || colors[e.white] != Color::White {
                return Err(DessinError::InvalidTree(
                    "edge endpoints must be one black, one white".into(),
                ));
            }
            if e.weight == 0 {
                return Err(DessinError::InvalidTree("zero edge weight".into()));
            }
            incident[e.black].push(id);
            incident[e.white].push(id);
        }
        for (vtx, rot) in rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            let mut expected = incident[vtx].clone();
            expected.sort_unstable();
            if sorted != expected {
                return Err(DessinError::InvalidTree(format!(
                    "rotation at vertex {vtx} is not a cyclic order of its incident edges"
                )));
            }
        }
        // Connectivity: |E| = |V| - 1 plus connectedness makes it a tree.
        let mut seen = vec![false; v];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &eid in &incident[x] {
                let e = &edges[eid];
                let other = if e.black == x { e.white } else { e.black };
                if !seen[other] {
                    seen[other] = true;
                    count += 1;
                    stack.push(other);
                }
            }
        }
        if count != v {
            return Err(DessinError::InvalidTree("tree is not connected".into()));
        }
        Ok(WeightedPlaneTree {
            colors,
            edges,
            rotations,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Signed valency: positive on black vertices, negative on white.
    pub fn signed_valency(&self, v: usize) -> i64 {
        let sum: u64 = self
            .edges
            .iter()
            .filter(|e| e.black == v || e.white == v)
            .map(|e| e.weight)
            .sum();
        match self.colors[v] {
            Color::Black => sum as i64,
            Color::White => -(sum as i64),
        }
    }

    pub fn signed_valencies(&self) -> Vec<i64> {
        (0..self.vertex_count())
            .map(|v| self.signed_valency(v))
            .collect()
    }

    /// Graphviz rendering of the tree shape. The embedding is only
    /// combinatorial; DOT output makes no planarity promise.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tree {\n  node [shape=circle, label=\"\"];\n");
        for (v, color) in self.colors.iter().enumerate() {
            match color {
                Color::Black => out.push_str(&format!("  v{v} [style=filled, fillcolor=black];\n")),
                Color::White => out.push_str(&format!("  v{v};\n")),
            }
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  v{} -- v{} [label=\"{}\"];\n",
                e.black, e.white, e.weight
            ));
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for WeightedPlaneTree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct VertexRepr {
            id: usize,
            color: Color,
        }
        struct EdgeList<'a>(&'a [TreeEdge]);
        impl Serialize for EdgeList<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for e in self.0 {
                    #[derive(Serialize)]
                    struct EdgeRepr {
                        black: usize,
                        white: usize,
                        weight: u64,
                    }
                    seq.serialize_element(&EdgeRepr {
                        black: e.black,
                        white: e.white,
                        weight: e.weight,
                    })?;
                }
                seq.end()
            }
        }
        struct RotationMap<'a>(&'a [Vec<usize>]);
        impl Serialize for RotationMap<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (v, rot) in self.0.iter().enumerate() {
                    map.serialize_entry(&v, rot)?;
                }
                map.end()
            }
        }
        let vertices: Vec<VertexRepr> = self
            .colors
            .iter()
            .enumerate()
            .map(|(id, &color)| VertexRepr { id, color })
            .collect();
        let mut st = s.serialize_struct("WeightedPlaneTree", 3)?;
        st.serialize_field("vertices", &vertices)?;
        st.serialize_field("edges", &EdgeList(&self.edges))?;
        st.serialize_field("rotation", &RotationMap(&self.rotations))?;
        st.end()
    }
}

/// Builds a tree whose signed valency list is exactly the given zero-sum
/// lift (vertex i corresponds to entry i). Errors with `NotRealizable`
/// when k (r-1) > n.
///
/// The construction divides out the gcd, recurses, and multiplies the
/// weights back. Base case: one side has a single vertex, giving a star
/// with leaves in index order. Otherwise a positive entry of minimal
/// absolute value is attached as a new leaf to a strictly larger opposite
/// vertex, chosen to minimize the gcd of the merged tuple, and the merged
/// tuple is realized recursively.
pub fn build_tree(lift: &LiftedType) -> Result<WeightedPlaneTree, DessinError> {
    if !realizable(lift)? {
        return Err(DessinError::NotRealizable);
    }
    let entries = lift.entries();
    let (edges, rotations) = build_rec(entries);
    let colors: Vec<Color> = entries
        .iter()
        .map(|&a| if a > 0 { Color::Black } else { Color::White })
        .collect();
    let tree_edges: Vec<TreeEdge> = edges
        .into_iter()
        .map(|(u, v, weight)| {
            // Exactly one endpoint is positive in the original signs.
            debug_assert!((entries[u] > 0) != (entries[v] > 0));
            if entries[u] > 0 {
                TreeEdge {
                    black: u,
                    white: v,
                    weight,
                }
            } else {
                TreeEdge {
                    black: v,
                    white: u,
                    weight,
                }
            }
        })
        .collect();
    let tree = WeightedPlaneTree::new(colors, tree_edges, rotations)?;
    debug_assert_eq!(tree.signed_valencies(), entries.to_vec());
    Ok(tree)
}

type RawEdges = Vec<(usize, usize, u64)>;

fn build_rec(entries: &[i64]) -> (RawEdges, Vec<Vec<usize>>) {
    let k = entries
        .iter()
        .fold(0u64, |acc, &a| num_integer::gcd(acc, a.unsigned_abs()));
    debug_assert!(k >= 1);
    let scaled: Vec<i64> = entries.iter().map(|&a| a / k as i64).collect();
    let (mut edges, rotations) = build_core(&scaled);
    for e in &mut edges {
        e.2 *= k;
    }
    (edges, rotations)
}

fn build_core(entries: &[i64]) -> (RawEdges, Vec<Vec<usize>>) {
    let r = entries.len();
    let s = entries.iter().filter(|&&a| a > 0).count();
    debug_assert!(s >= 1 && s < r, "zero-sum nonzero tuple has both signs");
    if s == 1 || r - s == 1 {
        // Star: the singleton side is the center, leaves in index order.
        let center = if s == 1 {
            entries.iter().position(|&a| a > 0).unwrap()
        } else {
            entries.iter().position(|&a| a < 0).unwrap()
        };
        let mut edges = Vec::new();
        let mut rotations = vec![Vec::new(); r];
        for (i, a) in entries.iter().enumerate() {
            if i == center {
                continue;
            }
            let id = edges.len();
            edges.push((center, i, a.unsigned_abs()));
            rotations[center].push(id);
            rotations[i].push(id);
        }
        return (edges, rotations);
    }
    // Orient so that some positive entry attains the minimal |.| and some
    // negative entry strictly exceeds it; the tree shape is sign-agnostic,
    // colors are assigned from the original signs by the caller.
    let vmin = entries.iter().map(|a| a.unsigned_abs()).min().unwrap();
    let pos_attains = entries.iter().any(|&a| a > 0 && a.unsigned_abs() == vmin);
    let neg_exceeds = entries.iter().any(|&a| a < 0 && a.unsigned_abs() > vmin);
    if !(pos_attains && neg_exceeds) {
        let flipped: Vec<i64> = entries.iter().map(|&a| -a).collect();
        let fs = flipped.iter().filter(|&&a| a > 0).count();
        let f_pos = flipped.iter().any(|&a| a > 0 && a.unsigned_abs() == vmin);
        let f_neg = flipped.iter().any(|&a| a < 0 && a.unsigned_abs() > vmin);
        assert!(
            fs >= 1 && fs < r && f_pos && f_neg,
            "realizable gcd-1 tuple admits a pivot after at most one sign flip"
        );
        return build_core(&flipped);
    }
    let pivot = entries
        .iter()
        .position(|&a| a > 0 && a.unsigned_abs() == vmin)
        .unwrap();
    let w = entries[pivot];
    // Merge target: negative entry with entry + w still negative, chosen to
    // minimize the gcd of the merged tuple; ties to the smallest index.
    let mut best: Option<(u64, usize)> = None;
    for (j, &a) in entries.iter().enumerate() {
        if a < 0 && a + w < 0 {
            let mut g = 0u64;
            for (i, &b) in entries.iter().enumerate() {
                if i == pivot {
                    continue;
                }
                let v = if i == j { a + w } else { b };
                g = num_integer::gcd(g, v.unsigned_abs());
            }
            if best.is_none_or(|(bg, _)| g < bg) {
                best = Some((g, j));
            }
        }
    }
    let (_, j0) = best.expect("a strictly larger opposite entry exists");
    let mut child = Vec::with_capacity(r - 1);
    let mut child_to_parent = Vec::with_capacity(r - 1);
    for (i, &a) in entries.iter().enumerate() {
        if i == pivot {
            continue;
        }
        child.push(if i == j0 { a + w } else { a });
        child_to_parent.push(i);
    }
    debug_assert!(
        realizable(&LiftedType::new(child.clone()).unwrap()).unwrap(),
        "merged tuple stays realizable"
    );
    let (child_edges, child_rotations) = build_rec(&child);
    let mut edges: RawEdges = child_edges
        .into_iter()
        .map(|(a, b, wt)| (child_to_parent[a], child_to_parent[b], wt))
        .collect();
    let mut rotations = vec![Vec::new(); r];
    for (ci, rot) in child_rotations.into_iter().enumerate() {
        rotations[child_to_parent[ci]] = rot;
    }
    let new_edge = edges.len();
    edges.push((j0, pivot, w as u64));
    rotations[j0].insert(0, new_edge);
    rotations[pivot].push(new_edge);
    (edges, rotations)
}

/// Expands each weight-w edge into w parallel strands and reads off the
/// permutation triple: sigma1 from the black rotations, sigma3 from the
/// white rotations (strand blocks reversed on the white side), and
/// sigma2 = sigma1^{-1} sigma3^{-1} so the triple has product one.
///
/// The face condition — sigma2 is a single (r-1)-cycle plus fixed points —
/// is asserted afterwards; if the primary strand convention fails it, the
/// white-side order is reversed instead. Exactly one convention works for
/// a valid tree.
pub fn tree_to_generating_system(
    tree: &WeightedPlaneTree,
) -> Result<GeneratingSystem, DessinError> {
    let n = tree.total_weight() as usize;
    let r = tree.vertex_count() as u64;
    let mut strand_start = Vec::with_capacity(tree.edges().len());
    let mut acc = 0usize;
    for e in tree.edges() {
        strand_start.push(acc);
        acc += e.weight as usize;
    }
    let expected_c2 = CycleType::with_degree(vec![r - 1], n as u64)?;
    for white_reversed in [true, false] {
        let sigma1 = rotation_permutation(tree, Color::Black, &strand_start, n, white_reversed);
        let sigma3 = rotation_permutation(tree, Color::White, &strand_start, n, white_reversed);
        let sigma2 = sigma1.inverse().compose(&sigma3.inverse());
        if sigma2.cycle_type() != expected_c2 {
            continue;
        }
        let system = match GeneratingSystem::new(sigma1, sigma2, sigma3) {
            Ok(sys) => sys,
            Err(_) => continue,
        };
        if system.combinatorial_type().genus() != Ok(0) {
            continue;
        }
        return Ok(system);
    }
    Err(DessinError::FaceConditionFailed)
}

fn rotation_permutation(
    tree: &WeightedPlaneTree,
    color: Color,
    strand_start: &[usize],
    n: usize,
    white_reversed: bool,
) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    for (v, rot) in tree.rotations().iter().enumerate() {
        if tree.colors()[v] != color {
            continue;
        }
        let mut seq = Vec::new();
        for &eid in rot {
            let w = tree.edges()[eid].weight as usize;
            let start = strand_start[eid];
            if color == Color::Black || !white_reversed {
                seq.extend(start..start + w);
            } else {
                seq.extend((start..start + w).rev());
            }
        }
        let len = seq.len();
        for i in 0..len {
            images[seq[i]] = seq[(i + 1) % len];
        }
    }
    Permutation::from_zero_based_unchecked(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dessins::combinatorial_type_m1;

    fn lift(entries: &[i64]) -> LiftedType {
        LiftedType::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn single_weighted_edge() {
        for k in 1..5i64 {
            let tree = build_tree(&lift(&[k, -k])).unwrap();
            assert_eq!(tree.vertex_count(), 2);
            assert_eq!(tree.edges().len(), 1);
            assert_eq!(tree.edges()[0].weight, k as u64);
            let system = tree_to_generating_system(&tree).unwrap();
            // Both rotations are full cycles on the strands; the middle
            // permutation fixes everything.
            assert!(system.sigma2.is_identity());
        }
    }

    #[test]
    fn star_tree() {
        let tree = build_tree(&lift(&[3, -1, -1, -1])).unwrap();
        assert_eq!(tree.vertex_count(), 4);
        assert_eq!(tree.signed_valencies(), vec![3, -1, -1, -1]);
        let system = tree_to_generating_system(&tree).unwrap();
        // sigma1 is a 3-cycle, sigma3 trivial, sigma2 a 3-cycle.
        assert_eq!(system.sigma1.cycle_type().parts(), &[3]);
        assert_eq!(system.sigma3.cycle_type().parts(), &[1, 1, 1]);
        assert_eq!(system.sigma2.cycle_type().parts(), &[3]);
    }

    #[test]
    fn figure_tree_valencies_and_type() {
        let a = lift(&[2, 4, -3, -2, -1]);
        let tree = build_tree(&a).unwrap();
        assert_eq!(tree.signed_valencies(), vec![2, 4, -3, -2, -1]);
        assert_eq!(tree.total_weight(), 6);
        let system = tree_to_generating_system(&tree).unwrap();
        let expected = combinatorial_type_m1(&a).unwrap();
        assert_eq!(system.combinatorial_type(), expected);
    }

    #[test]
    fn unrealizable_is_rejected() {
        assert!(matches!(
            build_tree(&lift(&[1, 1, -1, -1])),
            Err(DessinError::NotRealizable)
        ));
    }

    #[test]
    fn gcd_divides_every_weight() {
        let a = lift(&[4, 2, -2, -4]);
        let tree = build_tree(&a).unwrap();
        let (_, k) = a.stats();
        assert_eq!(k, 2);
        for e in tree.edges() {
            assert_eq!(e.weight % k, 0);
        }
    }

    #[test]
    fn dot_output_mentions_every_edge() {
        let tree = build_tree(&lift(&[3, -1, -1, -1])).unwrap();
        let dot = tree.to_dot();
        assert_eq!(dot.matches(" -- ").count(), 3);
    }
}
