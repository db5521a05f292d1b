//! Naive canonical forms, automorphism orbits and small-order enumeration.
//!
//! Vertices are first split into colour classes by iterated degree
//! refinement (an isomorphism invariant), then every class-respecting
//! relabelling is tried. That is hopeless for large symmetric graphs but
//! comfortably fast up to order 7, which is all the built-in enumerator
//! handles.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::Graph;

/// Largest order the built-in enumerator accepts.
pub const MAX_ENUM_ORDER: usize = 7;

/// Largest order `canonical_code` can pack into a `u128`.
const MAX_CODE_ORDER: usize = 16;

/// Stable colour refinement starting from `initial`.
fn refine(g: &Graph, initial: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut colors = initial.to_vec();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|u| {
                let mut nb: Vec<usize> = g.neighbors(u).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[u], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let ranked: Vec<&(usize, Vec<usize>)> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranked.binary_search(&s).expect("present")).collect();
        let before = colors.iter().collect::<BTreeSet<_>>().len();
        let after = ranked.len();
        colors = next;
        if after == before {
            return colors;
        }
    }
}

fn degree_colors(g: &Graph) -> Vec<usize> {
    (0..g.order()).map(|u| g.degree(u)).collect()
}

/// Bits of the upper triangle (graph6 order) under `at`, where `at[p]` is
/// the vertex placed at position `p`. First bit is most significant.
fn code_of(g: &Graph, at: &[usize]) -> u128 {
    let mut code = 0u128;
    for j in 1..at.len() {
        for i in 0..j {
            code = code << 1 | g.has_edge(at[i], at[j]) as u128;
        }
    }
    code
}

/// Canonical code: the largest upper-triangle bit string over all
/// relabellings that respect the refined colour classes.
///
/// Two graphs of the same order are isomorphic iff their codes agree.
/// Passing `root` makes that vertex its own class, giving a rooted-graph
/// invariant.
pub fn canonical_code(g: &Graph, root: Option<usize>) -> u128 {
    let n = g.order();
    assert!(n <= MAX_CODE_ORDER, "canonical_code supports order <= {MAX_CODE_ORDER}");
    let mut init = degree_colors(g);
    if let Some(r) = root {
        init[r] += n;
    }
    let colors = refine(g, &init);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); colors.iter().max().map_or(0, |m| m + 1)];
    for (u, &c) in colors.iter().enumerate() {
        cells[c].push(u);
    }
    let slots: Vec<usize> = cells.iter().enumerate().flat_map(|(c, v)| std::iter::repeat_n(c, v.len())).collect();
    let mut at = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut best = 0u128;
    fill(g, &cells, &slots, 0, &mut at, &mut used, &mut best);
    best
}

fn fill(
    g: &Graph,
    cells: &[Vec<usize>],
    slots: &[usize],
    pos: usize,
    at: &mut [usize],
    used: &mut [bool],
    best: &mut u128,
) {
    if pos == at.len() {
        *best = (*best).max(code_of(g, at));
        return;
    }
    for &u in &cells[slots[pos]] {
        if !used[u] {
            used[u] = true;
            at[pos] = u;
            fill(g, cells, slots, pos + 1, at, used, best);
            used[u] = false;
        }
    }
}

/// Rebuilds the graph whose canonical labelling produced `code`.
fn decode(order: usize, code: u128) -> Graph {
    let nbits = order * (order.saturating_sub(1)) / 2;
    let mut g = Graph::empty(order);
    let mut k = 0;
    for j in 1..order {
        for i in 0..j {
            if code >> (nbits - 1 - k) & 1 == 1 {
                g.set(i, j);
                g.set(j, i);
            }
            k += 1;
        }
    }
    g
}

/// One representative per isomorphism class of graphs on `order` vertices,
/// sorted by edge count and then canonical code.
pub fn enumerate_graphs(order: usize, connected_only: bool) -> Result<Vec<Graph>> {
    if order == 0 {
        return Err(Error::Precondition("cannot enumerate graphs of order 0".into()));
    }
    if order > MAX_ENUM_ORDER {
        return Err(Error::OrderTooLarge(order));
    }
    let mut level: BTreeSet<u128> = BTreeSet::from([0]);
    for k in 1..order {
        let mut next = BTreeSet::new();
        for &code in &level {
            let base = decode(k, code);
            for mask in 0u32..(1 << k) {
                let mut g = Graph::empty(k + 1);
                for (u, w) in base.edges() {
                    g.set(u, w);
                    g.set(w, u);
                }
                for u in (0..k).filter(|u| mask >> u & 1 == 1) {
                    g.set(u, k);
                    g.set(k, u);
                }
                next.insert(canonical_code(&g, None));
            }
        }
        level = next;
    }
    let mut graphs: Vec<(usize, u128, Graph)> = level
        .into_iter()
        .map(|c| {
            let g = decode(order, c);
            (g.edge_count(), c, g)
        })
        .filter(|(_, _, g)| !connected_only || g.is_connected())
        .collect();
    graphs.sort_by_key(|(e, c, _)| (*e, *c));
    Ok(graphs.into_iter().map(|(_, _, g)| g).collect())
}

/// Vertex orbits of the automorphism group, each sorted, listed by
/// smallest member.
pub fn automorphism_orbits(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let colors = refine(g, &degree_colors(g));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for u in 0..n {
        for w in u + 1..n {
            if colors[u] != colors[w] || find(&mut parent, u) == find(&mut parent, w) {
                continue;
            }
            if let Some(sigma) = automorphism_mapping(g, &colors, u, w) {
                for (x, &y) in sigma.iter().enumerate() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut index_of = vec![usize::MAX; n];
    for u in 0..n {
        let r = find(&mut parent, u);
        if index_of[r] == usize::MAX {
            index_of[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[index_of[r]].push(u);
    }
    orbits
}

/// Finds an automorphism sending `u` to `w`, if one exists.
fn automorphism_mapping(g: &Graph, colors: &[usize], u: usize, w: usize) -> Option<Vec<usize>> {
    let n = g.order();
    let mut order: Vec<usize> = vec![u];
    order.extend((0..n).filter(|&x| x != u));
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[u] = w;
    used[w] = true;
    if extend(g, colors, &order, 1, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn extend(g: &Graph, colors: &[usize], order: &[usize], k: usize, image: &mut [usize], used: &mut [bool]) -> bool {
    if k == order.len() {
        return true;
    }
    let x = order[k];
    for y in 0..g.order() {
        if used[y] || colors[y] != colors[x] {
            continue;
        }
        let consistent = order[..k].iter().all(|&z| g.has_edge(x, z) == g.has_edge(y, image[z]));
        if !consistent {
            continue;
        }
        image[x] = y;
        used[y] = true;
        if extend(g, colors, order, k + 1, image, used) {
            return true;
        }
        used[y] = false;
        image[x] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let all = [1, 2, 4, 11, 34, 156];
        let connected = [1, 1, 2, 6, 21, 112];
        for m in 1..=6 {
            assert_eq!(enumerate_graphs(m, false).unwrap().len(), all[m - 1], "order {m}");
            assert_eq!(enumerate_graphs(m, true).unwrap().len(), connected[m - 1], "order {m}");
        }
    }

    #[test]
    fn order_one_is_k1() {
        assert_eq!(enumerate_graphs(1, false).unwrap(), vec![Graph::empty(1)]);
    }

    #[test]
    fn order_cap() {
        assert!(matches!(enumerate_graphs(8, false), Err(Error::OrderTooLarge(8))));
        assert!(matches!(enumerate_graphs(0, false), Err(Error::Precondition(_))));
    }

    #[test]
    fn code_is_invariant_under_relabelling() {
        let g = Graph::paw();
        let h = g.permuted(&[3, 1, 0, 2]);
        assert_eq!(canonical_code(&g, None), canonical_code(&h, None));
        assert_ne!(canonical_code(&g, None), canonical_code(&Graph::path(4), None));
        // rooted: vertices 0 and 1 of the paw are equivalent, 3 is not
        assert_eq!(canonical_code(&g, Some(0)), canonical_code(&g, Some(1)));
        assert_ne!(canonical_code(&g, Some(0)), canonical_code(&g, Some(3)));
    }

    #[test]
    fn orbits_of_small_graphs() {
        assert_eq!(automorphism_orbits(&Graph::paw()), vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(automorphism_orbits(&Graph::path(4)), vec![vec![0, 3], vec![1, 2]]);
        assert_eq!(automorphism_orbits(&Graph::cycle(5)), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(automorphism_orbits(&Graph::star(4)), vec![vec![0], vec![1, 2, 3]]);
    }
}
