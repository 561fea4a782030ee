use num_bigint::BigUint;
use num_traits::One;

use super::{OracleError, WeightedGraph};

/// Colour class per node; class ids are dense `0..k`.
type Coloring = Vec<u32>;

pub(super) struct Chain {
    pub order: BigUint,
    pub generators: Vec<Vec<usize>>,
    pub orbits: Vec<Vec<usize>>,
}

/// Renumbers per-node keys to dense class ids shared by every side. `None`
/// when the sides disagree on how many nodes carry some key.
fn canonical_ids<K: Ord>(sides: &[Vec<K>]) -> Option<Vec<Coloring>> {
    let mut all: Vec<&K> = sides.iter().flatten().collect();
    all.sort();
    all.dedup();
    let colorings: Vec<Coloring> = sides
        .iter()
        .map(|keys| {
            keys.iter()
                .map(|k| all.binary_search(&k).expect("key present") as u32)
                .collect()
        })
        .collect();
    let histogram = |c: &Coloring| {
        let mut h = vec![0usize; all.len()];
        for &x in c {
            h[x as usize] += 1;
        }
        h
    };
    let first = histogram(&colorings[0]);
    if colorings[1..].iter().any(|c| histogram(c) != first) {
        return None;
    }
    Some(colorings)
}

fn class_count(c: &Coloring) -> usize {
    c.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Refines every side in lockstep to a stable colouring.
fn refine(sides: &[&WeightedGraph], mut colorings: Vec<Coloring>) -> Option<Vec<Coloring>> {
    loop {
        let before = class_count(&colorings[0]);
        let keys: Vec<Vec<(u32, Vec<u32>)>> = sides
            .iter()
            .zip(&colorings)
            .map(|(g, c)| {
                (0..g.node_count())
                    .map(|v| {
                        let mut around: Vec<u32> = g.neighbors(v).iter().map(|&u| c[u]).collect();
                        around.sort_unstable();
                        (c[v], around)
                    })
                    .collect()
            })
            .collect();
        colorings = canonical_ids(&keys)?;
        if class_count(&colorings[0]) == before {
            return Some(colorings);
        }
    }
}

fn initial(sides: &[&WeightedGraph]) -> Option<Vec<Coloring>> {
    let keys: Vec<Vec<(u64, usize)>> = sides
        .iter()
        .map(|g| {
            (0..g.node_count())
                .map(|v| (g.weight(v), g.degree(v)))
                .collect()
        })
        .collect();
    let colorings = canonical_ids(&keys)?;
    refine(sides, colorings)
}

pub(super) fn root_coloring(g: &WeightedGraph) -> Coloring {
    initial(&[g])
        .expect("a single side always agrees with itself")
        .remove(0)
}

/// Smallest non-singleton class, ties broken by class id.
fn target_cell(c: &Coloring) -> Option<u32> {
    let mut sizes = vec![0usize; class_count(c)];
    for &x in c {
        sizes[x as usize] += 1;
    }
    sizes
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|(i, &s)| (s, *i))
        .map(|(i, _)| i as u32)
}

fn individualize(c: &Coloring, v: usize) -> Coloring {
    let mut out = c.clone();
    out[v] = class_count(c) as u32;
    out
}

fn members(c: &Coloring, cell: u32) -> Vec<usize> {
    (0..c.len()).filter(|&v| c[v] == cell).collect()
}

/// Map induced by two matching discrete colourings.
fn leaf_map(ca: &Coloring, cb: &Coloring) -> Vec<usize> {
    let mut node_of = vec![0; cb.len()];
    for (w, &x) in cb.iter().enumerate() {
        node_of[x as usize] = w;
    }
    ca.iter().map(|&x| node_of[x as usize]).collect()
}

fn branch(
    a: &WeightedGraph,
    ca: &Coloring,
    v: usize,
    b: &WeightedGraph,
    cb: &Coloring,
    w: usize,
) -> Option<(Coloring, Coloring)> {
    let mut r = refine(&[a, b], vec![individualize(ca, v), individualize(cb, w)])?;
    let cb = r.pop().unwrap();
    let ca = r.pop().unwrap();
    Some((ca, cb))
}

/// First verified isomorphism `a -> b` consistent with the colourings.
fn search_first(
    a: &WeightedGraph,
    ca: &Coloring,
    b: &WeightedGraph,
    cb: &Coloring,
) -> Option<Vec<usize>> {
    let Some(cell) = target_cell(ca) else {
        let map = leaf_map(ca, cb);
        return a.is_isomorphism_to(b, &map).then_some(map);
    };
    let v = members(ca, cell)[0];
    members(cb, cell).into_iter().find_map(|w| {
        let (na, nb) = branch(a, ca, v, b, cb, w)?;
        search_first(a, &na, b, &nb)
    })
}

pub(super) fn find_isomorphism(a: &WeightedGraph, b: &WeightedGraph) -> Option<Vec<usize>> {
    let mut roots = initial(&[a, b])?;
    let cb = roots.pop().unwrap();
    let ca = roots.pop().unwrap();
    search_first(a, &ca, b, &cb)
}

pub(super) fn enumerate(g: &WeightedGraph, max: u64) -> Result<Vec<Vec<usize>>, OracleError> {
    fn walk(
        g: &WeightedGraph,
        ca: &Coloring,
        cb: &Coloring,
        max: u64,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), OracleError> {
        let Some(cell) = target_cell(ca) else {
            let map = leaf_map(ca, cb);
            if g.is_automorphism(&map) {
                if out.len() as u64 >= max {
                    return Err(OracleError::CountCapExceeded { max });
                }
                out.push(map);
            }
            return Ok(());
        };
        let v = members(ca, cell)[0];
        for w in members(cb, cell) {
            if let Some((na, nb)) = branch(g, ca, v, g, cb, w) {
                walk(g, &na, &nb, max, out)?;
            }
        }
        Ok(())
    }
    let root = root_coloring(g);
    let mut out = Vec::new();
    walk(g, &root, &root, max, &mut out)?;
    Ok(out)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.0[rx.max(ry)] = rx.min(ry);
        }
    }

    fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }
}

pub(super) fn stabilizer_chain(g: &WeightedGraph) -> Chain {
    let n = g.node_count();
    let mut uf = UnionFind((0..n).collect());
    let mut generators = Vec::new();
    let order = if n == 0 {
        BigUint::one()
    } else {
        chain_level(g, &root_coloring(g), &mut uf, &mut generators)
    };
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = uf.find(v);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(v);
    }
    Chain {
        order,
        generators,
        orbits,
    }
}

/// Order of the pointwise stabilizer of the nodes already individualized in
/// `c`. Generators found along the way are merged into `uf`.
fn chain_level(
    g: &WeightedGraph,
    c: &Coloring,
    uf: &mut UnionFind,
    generators: &mut Vec<Vec<usize>>,
) -> BigUint {
    let Some(cell) = target_cell(c) else {
        return BigUint::one();
    };
    let candidates = members(c, cell);
    let v = candidates[0];
    let fixed = refine(&[g], vec![individualize(c, v)])
        .expect("single side")
        .remove(0);
    let stabilizer = chain_level(g, &fixed, uf, generators);

    // Everything merged into `uf` so far fixes the earlier base points, so
    // known orbits can be skipped in both directions.
    let mut unreachable: Vec<usize> = Vec::new();
    for &w in &candidates[1..] {
        if uf.same(v, w) || unreachable.iter().any(|&d| uf.same(d, w)) {
            continue;
        }
        let found = branch(g, c, v, g, c, w).and_then(|(cv, cw)| search_first(g, &cv, g, &cw));
        match found {
            Some(map) => {
                assert!(
                    g.is_automorphism(&map),
                    "search returned a non-automorphism"
                );
                for (x, &y) in map.iter().enumerate() {
                    uf.union(x, y);
                }
                generators.push(map);
            }
            None => unreachable.push(w),
        }
    }
    let orbit = candidates.iter().filter(|&&w| uf.same(v, w)).count();
    stabilizer * orbit
}
