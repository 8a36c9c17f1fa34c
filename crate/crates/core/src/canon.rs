//! Canonical certificates for isomorphism testing.
//!
//! The certificate is the lexicographically largest packed upper-triangle
//! adjacency string over all leaves of an individualization–refinement search
//! tree. Refinement is colour refinement with cells ordered by their
//! neighbour-count signatures, so the tree is built in an isomorphism-invariant
//! way. Automorphisms discovered at equivalent leaves are used both to prune
//! children lying in a common orbit and to jump back to the common ancestor of
//! the two equivalent leaves.

use thiserror::Error;

use crate::graph::Graph;

/// Orders above this are rejected; the search is exhaustive up to automorphism
/// pruning and has no performance guarantee beyond it.
pub const MAX_CERTIFICATE_ORDER: usize = 20;

// Storing fewer automorphisms only weakens pruning.
const MAX_STORED_AUTOMORPHISMS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("canonical certificates are only supported up to order {MAX_CERTIFICATE_ORDER}, got {0}")]
pub struct OrderTooLarge(pub usize);

/// Byte string that is equal for two graphs iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCertificate(Vec<u8>);

impl CanonicalCertificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Computes the canonical certificate of `g` together with a canonical
/// ordering (`ordering[p]` is the vertex placed at position `p`).
pub fn canonical_form(g: &Graph) -> Result<(CanonicalCertificate, Vec<usize>), OrderTooLarge> {
    let n = g.order();
    if n > MAX_CERTIFICATE_ORDER {
        return Err(OrderTooLarge(n));
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let root = refine(g, vec![(0..n).collect()]);
    search.visit(root, &mut Vec::new());
    let best = search.best.expect("search tree has at least one leaf");
    let mut bytes = Vec::with_capacity(best.cert.len() + 1);
    bytes.push(n as u8);
    bytes.extend_from_slice(&best.cert);
    Ok((CanonicalCertificate(bytes), best.ordering))
}

pub fn canonical_certificate(g: &Graph) -> Result<CanonicalCertificate, OrderTooLarge> {
    canonical_form(g).map(|(c, _)| c)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool, OrderTooLarge> {
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    Ok(canonical_certificate(a)? == canonical_certificate(b)?)
}

struct Leaf {
    cert: Vec<u8>,
    ordering: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns `Some(level)` when the search should unwind to the node at
    /// depth `level` and continue with that node's next child.
    fn visit(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, path);
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cells[target] {
            if !explored.is_empty() && self.in_explored_orbit(w, &explored, path) {
                continue;
            }
            path.push(w);
            let child = refine(self.g, individualize(&cells, target, w));
            let jump = self.visit(child, path);
            path.pop();
            explored.push(w);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[Vec<usize>], path: &[usize]) -> Option<usize> {
        let ordering: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let cert = packed_adjacency(self.g, &ordering);
        let leaf = Leaf {
            cert,
            ordering,
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                cert: leaf.cert.clone(),
                ordering: leaf.ordering.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if first.cert == leaf.cert {
            let level = common_prefix(&first.path, path);
            let gamma = automorphism(&first.ordering, &leaf.ordering);
            self.store(gamma);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let level = common_prefix(&best.path, path);
                let gamma = automorphism(&best.ordering, &leaf.ordering);
                self.store(gamma);
                Some(level)
            }
            std::cmp::Ordering::Less => None,
        }
    }

    fn store(&mut self, gamma: Vec<usize>) {
        if self.autos.len() < MAX_STORED_AUTOMORPHISMS {
            self.autos.push(gamma);
        }
    }

    /// Whether `w` shares an orbit with an explored child under the group
    /// generated by stored automorphisms fixing `path` pointwise.
    fn in_explored_orbit(&self, w: usize, explored: &[usize], path: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut any = false;
        for gamma in &self.autos {
            if path.iter().all(|&v| gamma[v] == v) {
                any = true;
                for v in 0..n {
                    union(&mut parent, v, gamma[v]);
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// The permutation sending `from[p]` to `to[p]` for every position `p`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

fn individualize(cells: &[Vec<usize>], target: usize, w: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..target]);
    out.push(vec![w]);
    out.push(cells[target].iter().copied().filter(|&v| v != w).collect());
    out.extend_from_slice(&cells[target + 1..]);
    out
}

/// Colour refinement to an equitable partition. Each cell is split by the
/// vector of neighbour counts into every current cell; the pieces are ordered
/// by that vector, which keeps the procedure label-independent.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (ci, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = ci;
            }
        }
        let k = cells.len();
        let mut next = Vec::with_capacity(n);
        for c in &cells {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0u8; k];
                    for &w in g.neighbors(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == k {
            return next;
        }
        cells = next;
    }
}

fn packed_adjacency(g: &Graph, ordering: &[usize]) -> Vec<u8> {
    let n = ordering.len();
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u8; bits.div_ceil(8)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(ordering[i], ordering[j]) {
                out[k / 8] |= 0x80 >> (k % 8);
            }
            k += 1;
        }
    }
    out
}
