//! Independent reference computations for small graphs: brute-force
//! automorphism enumeration, group closure and orbits. These share no code
//! with the refinement-based search and are used to check it.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::ColoredGraph;
use crate::perm::Permutation;

/// Largest `n` accepted by the brute-force routines.
pub const ORACLE_MAX_N: usize = 10;

/// Disjoint-set forest over vertices, used for orbits.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl OrbitPartition {
    pub fn new(n: usize) -> Self {
        OrbitPartition {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, v: u32) -> u32 {
        let mut root = v;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = v;
        while x != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    /// Merges the orbits of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }

    pub fn same(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn orbit_size(&mut self, v: u32) -> u32 {
        let r = self.find(v);
        self.size[r as usize]
    }

    pub fn merge_permutation(&mut self, p: &Permutation) {
        for &(v, w) in p.moved_pairs() {
            self.union(v, w);
        }
    }

    /// Orbits as sorted vertex lists, ordered by smallest member.
    pub fn classes(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<u32>> = vec![Vec::new(); n];
        for v in 0..n as u32 {
            let r = self.find(v);
            by_root[r as usize].push(v);
        }
        let mut out: Vec<Vec<u32>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        out.sort();
        out
    }
}

/// Orbits of the group generated by `generators` on `0..n`.
pub fn orbits_of(n: usize, generators: &[Permutation]) -> Vec<Vec<u32>> {
    let mut o = OrbitPartition::new(n);
    for g in generators {
        o.merge_permutation(g);
    }
    o.classes()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSummary {
    pub order: BigUint,
    pub orbits: Vec<Vec<u32>>,
    pub generators: usize,
}

#[derive(Debug, Clone)]
pub struct BruteForce {
    pub summary: GroupSummary,
    /// Every automorphism, sorted.
    pub elements: Vec<Permutation>,
}

/// Enumerates Aut(g) by backtracking over color- and edge-preserving partial
/// maps. Refuses `n > ORACLE_MAX_N`.
pub fn brute_force_aut(g: &ColoredGraph) -> Result<BruteForce> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(Error::BoundExceeded {
            n,
            bound: ORACLE_MAX_N,
        });
    }
    let mut adj = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        adj[u as usize][v as usize] = true;
        adj[v as usize][u as usize] = true;
    }
    let mut image = vec![0usize; n];
    let mut used = vec![false; n];
    let mut elements = Vec::new();
    extend(g, &adj, 0, &mut image, &mut used, &mut elements);
    elements.sort();
    let orbits = orbits_of(n, &elements);
    Ok(BruteForce {
        summary: GroupSummary {
            order: BigUint::from(elements.len()),
            orbits,
            generators: elements.len(),
        },
        elements,
    })
}

fn extend(
    g: &ColoredGraph,
    adj: &[Vec<bool>],
    v: usize,
    image: &mut [usize],
    used: &mut [bool],
    out: &mut Vec<Permutation>,
) {
    let n = image.len();
    if v == n {
        let images: Vec<u32> = image.iter().map(|&w| w as u32).collect();
        out.push(Permutation::from_images(&images).expect("bijection"));
        return;
    }
    for w in 0..n {
        if used[w] || g.color(v as u32) != g.color(w as u32) {
            continue;
        }
        if (0..v).any(|u| adj[u][v] != adj[image[u]][w]) {
            continue;
        }
        image[v] = w;
        used[w] = true;
        extend(g, adj, v + 1, image, used, out);
        used[w] = false;
    }
}

/// Order of the group generated by `generators` on `0..n`, by explicit
/// closure. Refuses `n > ORACLE_MAX_N`.
pub fn generated_group_order(n: usize, generators: &[Permutation]) -> Result<BigUint> {
    if n > ORACLE_MAX_N {
        return Err(Error::BoundExceeded {
            n,
            bound: ORACLE_MAX_N,
        });
    }
    if let Some(p) = generators.iter().find(|p| p.n() != n) {
        return Err(Error::SizeMismatch {
            expected: n,
            found: p.n(),
        });
    }
    let gens: Vec<Vec<u32>> = generators.iter().map(|p| p.images()).collect();
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(x) = frontier.pop() {
        for gen in &gens {
            let y: Vec<u32> = x.iter().map(|&i| gen[i as usize]).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    Ok(BigUint::from(seen.len()))
}
