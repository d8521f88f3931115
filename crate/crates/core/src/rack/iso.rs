use super::Rack;

struct Search<'a> {
    x: &'a Rack,
    y: &'a Rack,
    px: Vec<(Vec<usize>, bool)>,
    py: Vec<(Vec<usize>, bool)>,
}

#[derive(Clone)]
struct State {
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
    assigned: Vec<usize>,
}

impl State {
    fn assign(&mut self, a: usize, b: usize) -> bool {
        match (self.fwd[a], self.bwd[b]) {
            (Some(fa), _) => fa == b,
            (None, Some(_)) => false,
            (None, None) => {
                self.fwd[a] = Some(b);
                self.bwd[b] = Some(a);
                self.assigned.push(a);
                true
            }
        }
    }
}

impl Search<'_> {
    /// Closes the partial map under `f(a ▷ b) = f(a) ▷ f(b)`; false on conflict.
    fn propagate(&self, st: &mut State, mut done: usize) -> bool {
        while done < st.assigned.len() {
            let a = st.assigned[done];
            let mut k = 0;
            while k <= done {
                let b = st.assigned[k];
                for (l, r) in [(a, b), (b, a)] {
                    let fl = st.fwd[l].expect("assigned");
                    let fr = st.fwd[r].expect("assigned");
                    let src = self.x.op(l, r);
                    let dst = self.y.op(fl, fr);
                    if self.px[src] != self.py[dst] || !st.assign(src, dst) {
                        return false;
                    }
                }
                k += 1;
            }
            done += 1;
        }
        true
    }

    fn solve(&self, st: State) -> Option<Vec<usize>> {
        let n = self.x.size();
        let Some(next) = (0..n).find(|&a| st.fwd[a].is_none()) else {
            return Some(st.fwd.into_iter().map(|v| v.expect("complete")).collect());
        };
        for cand in 0..n {
            if st.bwd[cand].is_some() || self.px[next] != self.py[cand] {
                continue;
            }
            let mut trial = st.clone();
            let done = trial.assigned.len();
            trial.assign(next, cand);
            if self.propagate(&mut trial, done) {
                if let Some(found) = self.solve(trial) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// A `▷`-preserving bijection `f` with `f[x]` the image of `x`, if one exists.
///
/// Backtracking over points in index order, trying candidates in index order
/// among those with the same translation cycle type, with forced images
/// propagated after each choice.
pub fn are_isomorphic(x: &Rack, y: &Rack) -> Option<Vec<usize>> {
    if x.size() != y.size() {
        return None;
    }
    let px = x.profiles();
    let py = y.profiles();
    let mut sx = px.clone();
    let mut sy = py.clone();
    sx.sort();
    sy.sort();
    if sx != sy {
        return None;
    }
    let n = x.size();
    let search = Search { x, y, px, py };
    search.solve(State {
        fwd: vec![None; n],
        bwd: vec![None; n],
        assigned: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_hom(x: &Rack, y: &Rack, f: &[usize]) -> bool {
        (0..x.size()).all(|a| (0..x.size()).all(|b| f[x.op(a, b)] == y.op(f[a], f[b])))
    }

    #[test]
    fn reflexive() {
        let d = Rack::dihedral(5).unwrap();
        let f = are_isomorphic(&d, &d).unwrap();
        assert_eq!(f, (0..5).collect::<Vec<_>>());
    }

    #[test]
    fn relabeled_copy_is_found() {
        let o = Rack::four_cycles().double();
        let perm = vec![7, 2, 11, 0, 5, 9, 1, 3, 10, 4, 8, 6];
        let r = o.relabel(&perm);
        let f = are_isomorphic(&o, &r).unwrap();
        assert!(is_hom(&o, &r, &f));
    }

    #[test]
    fn dihedral_is_not_abelian() {
        assert!(are_isomorphic(&Rack::dihedral(3).unwrap(), &Rack::abelian(3)).is_none());
        assert!(are_isomorphic(&Rack::dihedral(3).unwrap(), &Rack::abelian(4)).is_none());
    }
}
