use serde::Serialize;

use crate::rack::{are_isomorphic, Rack};

/// Maximal sets of pairwise commuting points (`x ▷ y = y` and `y ▷ x = x`),
/// each of at most `max_size` points, sorted.
///
/// Cliques that reach `max_size` are reported as they stand even if they
/// extend further. Results come in lexicographic order.
pub fn find_abelian_subracks(rack: &Rack, max_size: usize) -> Vec<Vec<usize>> {
    let n = rack.size();
    commuting_cliques(&(0..n).collect::<Vec<_>>(), max_size, usize::MAX, |a, b| {
        rack.op(a, b) == b && rack.op(b, a) == a
    })
}

/// Bounded Bron–Kerbosch over `candidates` for the relation `adj`.
/// Stops after `limit` cliques.
pub fn commuting_cliques(
    candidates: &[usize],
    max_size: usize,
    limit: usize,
    adj: impl Fn(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    let k = candidates.len();
    let mut adjacency = vec![vec![false; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let e = adj(candidates[i], candidates[j]);
            adjacency[i][j] = e;
            adjacency[j][i] = e;
        }
    }
    let mut out = Vec::new();
    let mut clique = Vec::new();
    extend(
        &adjacency,
        &mut clique,
        (0..k).collect(),
        Vec::new(),
        max_size.max(1),
        limit,
        &mut out,
    );
    let mut cliques: Vec<Vec<usize>> = out
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|i| candidates[i]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    cliques.sort();
    cliques
}

fn extend(
    adj: &[Vec<bool>],
    clique: &mut Vec<usize>,
    mut candidates: Vec<usize>,
    mut excluded: Vec<usize>,
    max_size: usize,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= limit {
        return;
    }
    if clique.len() == max_size || (candidates.is_empty() && excluded.is_empty()) {
        if !clique.is_empty() {
            out.push(clique.clone());
        }
        return;
    }
    while let Some(&v) = candidates.first() {
        candidates.remove(0);
        clique.push(v);
        let next: Vec<usize> = candidates.iter().copied().filter(|&u| adj[v][u]).collect();
        let next_x: Vec<usize> = excluded.iter().copied().filter(|&u| adj[v][u]).collect();
        extend(adj, clique, next, next_x, max_size, limit, out);
        clique.pop();
        excluded.push(v);
        if out.len() >= limit {
            return;
        }
    }
}

/// Closure of `seed` under `op`, or `None` once it exceeds `limit` points.
/// In a finite rack this is the generated subrack.
pub fn bounded_closure(
    seed: &[usize],
    limit: usize,
    op: impl Fn(usize, usize) -> usize,
) -> Option<Vec<usize>> {
    let mut seen = std::collections::HashSet::new();
    let mut list: Vec<usize> = Vec::new();
    for &x in seed {
        if seen.insert(x) {
            list.push(x);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let e = list[i];
        for j in 0..=i {
            let s = list[j];
            for v in [op(e, s), op(s, e)] {
                if seen.insert(v) {
                    list.push(v);
                }
            }
        }
        if list.len() > limit {
            return None;
        }
        i += 1;
    }
    if list.len() > limit {
        return None;
    }
    list.sort_unstable();
    Some(list)
}

/// A subrack isomorphic to `D_p^(2)` or `𝔒^(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleFinding {
    /// `"D3^(2)"`, `"D5^(2)"`, … or `"O^(2)"`.
    pub template: String,
    /// Points of the subrack, sorted.
    pub indices: Vec<usize>,
    /// `embedding[i]` is the point of the finding matched to template point `i`.
    pub embedding: Vec<usize>,
}

/// The double racks searched for, smallest first.
pub fn double_templates(p_range: &[usize]) -> Vec<(String, Rack)> {
    let mut ps: Vec<usize> = p_range
        .iter()
        .copied()
        .filter(|&p| p >= 3 && p % 2 == 1)
        .collect();
    ps.sort_unstable();
    ps.dedup();
    let mut out: Vec<(String, Rack)> = ps
        .into_iter()
        .map(|p| {
            (
                format!("D{p}^(2)"),
                Rack::dihedral(p).expect("odd p").double(),
            )
        })
        .collect();
    out.push(("O^(2)".into(), Rack::four_cycles().double()));
    out.sort_by_key(|(_, r)| r.size());
    out
}

/// Checks whether the closed set `indices` is one of the templates.
pub(crate) fn classify_double(
    indices: &[usize],
    op: impl Fn(usize, usize) -> usize,
    templates: &[(String, Rack)],
) -> Option<DoubleFinding> {
    let k = indices.len();
    let local = |x: usize| indices.binary_search(&x).expect("closed");
    let table: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).map(|b| local(op(indices[a], indices[b]))).collect())
        .collect();
    let rack = Rack::from_table(table).ok()?;
    let comps = rack.inner_components();
    if comps.len() != 2 || comps[0].len() != comps[1].len() {
        return None;
    }
    templates
        .iter()
        .filter(|(_, t)| t.size() == k)
        .find_map(|(name, t)| {
            are_isomorphic(t, &rack).map(|f| DoubleFinding {
                template: name.clone(),
                indices: indices.to_vec(),
                embedding: f.iter().map(|&i| indices[i]).collect(),
            })
        })
}

/// Subracks of `rack` isomorphic to `double(dihedral(p))` for `p` in `p_range` or to
/// `double(four_cycles())`, found by closing pairs of points. Structural findings
/// only; each index set is reported once, in lexicographic order.
pub fn detect_double_subracks(rack: &Rack, p_range: &[usize]) -> Vec<DoubleFinding> {
    let templates = double_templates(p_range);
    let limit = templates.iter().map(|(_, t)| t.size()).max().unwrap_or(0);
    let n = rack.size();
    let mut findings: Vec<DoubleFinding> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let Some(z) = bounded_closure(&[a, b], limit, |x, y| rack.op(x, y)) else {
                continue;
            };
            if findings.iter().any(|f| f.indices == z) {
                continue;
            }
            if let Some(f) = classify_double(&z, |x, y| rack.op(x, y), &templates) {
                findings.push(f);
            }
        }
    }
    findings.sort_by(|a, b| a.indices.cmp(&b.indices));
    findings
}
