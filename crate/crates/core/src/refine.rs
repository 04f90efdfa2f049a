//! Vertex colourings and equitable refinement.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A vertex colouring by small integer labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    color: Vec<usize>,
}

impl Coloring {
    pub fn new(color: Vec<usize>) -> Coloring {
        Coloring { color }
    }

    pub fn uniform(n: usize) -> Coloring {
        Coloring { color: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.color.len()
    }

    pub fn is_empty(&self) -> bool {
        self.color.is_empty()
    }

    pub fn color(&self, v: usize) -> usize {
        self.color[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.color
    }

    /// Colour classes ordered by colour value; members ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut values: Vec<usize> = self.color.clone();
        values.sort_unstable();
        values.dedup();
        values
            .iter()
            .map(|&c| (0..self.color.len()).filter(|&v| self.color[v] == c).collect())
            .collect()
    }

    /// Every two same-coloured vertices have equally many neighbours in each class.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let classes = self.classes();
        classes.iter().all(|class| {
            classes.iter().all(|other| {
                let count = |v: usize| other.iter().filter(|&&w| g.has_edge(v, w)).count();
                let first = count(class[0]);
                class.iter().all(|&v| count(v) == first)
            })
        })
    }

    pub(crate) fn check(&self, g: &Graph) -> Result<()> {
        if self.color.len() != g.order() {
            return Err(Error::InvalidArgument(format!(
                "colouring has {} entries for {} vertices",
                self.color.len(),
                g.order()
            )));
        }
        Ok(())
    }
}

/// The coarsest equitable refinement of `initial`. Colours of the result are
/// cell indices in an isomorphism-invariant cell order, so two isomorphic
/// coloured graphs receive corresponding colourings.
pub fn refine(g: &Graph, initial: &Coloring) -> Result<Coloring> {
    initial.check(g)?;
    let mut p = Partition::from_coloring(initial.colors());
    let queue = p.cell_starts();
    p.refine(g, queue);
    let mut color = vec![0; g.order()];
    for (idx, start) in p.cell_starts().into_iter().enumerate() {
        for &v in p.cell(start) {
            color[v] = idx;
        }
    }
    Ok(Coloring { color })
}

#[inline]
pub(crate) fn mix(h: u64, x: u64) -> u64 {
    let mut z = h ^ x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// An ordered partition of `0..n`. Cells are identified by their start
/// position in `lab`.
#[derive(Debug, Clone)]
pub(crate) struct Partition {
    lab: Vec<usize>,
    pos: Vec<usize>,
    cell_of: Vec<usize>,
    len: Vec<usize>,
    cells: usize,
}

impl Partition {
    pub(crate) fn from_coloring(colors: &[usize]) -> Partition {
        let n = colors.len();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (colors[v], v));
        let mut pos = vec![0; n];
        let mut cell_of = vec![0; n];
        let mut len = vec![0; n];
        let mut cells = 0;
        let mut start = 0;
        for i in 0..n {
            pos[lab[i]] = i;
            if i > 0 && colors[lab[i]] != colors[lab[i - 1]] {
                len[start] = i - start;
                cells += 1;
                start = i;
            }
            cell_of[lab[i]] = start;
        }
        if n > 0 {
            len[start] = n - start;
            cells += 1;
        }
        Partition {
            lab,
            pos,
            cell_of,
            len,
            cells,
        }
    }

    #[inline]
    pub(crate) fn order(&self) -> usize {
        self.lab.len()
    }

    #[inline]
    pub(crate) fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    pub(crate) fn lab(&self) -> &[usize] {
        &self.lab
    }

    #[inline]
    pub(crate) fn cell(&self, start: usize) -> &[usize] {
        &self.lab[start..start + self.len[start]]
    }

    pub(crate) fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.lab.len() {
            out.push(s);
            s += self.len[s];
        }
        out
    }

    /// First smallest non-singleton cell.
    pub(crate) fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let l = self.len[s];
            if l > 1 && best.is_none_or(|b| l < self.len[b]) {
                best = Some(s);
                if l == 2 {
                    break;
                }
            }
            s += l;
        }
        best
    }

    /// Splits `v` off the front of its cell; returns the start of the new singleton.
    pub(crate) fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell_of[v];
        let l = self.len[s];
        debug_assert!(l > 1);
        let p = self.pos[v];
        let w = self.lab[s];
        self.lab.swap(s, p);
        self.pos[v] = s;
        self.pos[w] = p;
        self.len[s] = 1;
        self.len[s + 1] = l - 1;
        for i in s + 1..s + l {
            self.cell_of[self.lab[i]] = s + 1;
        }
        self.cells += 1;
        s
    }

    /// Refines to the coarsest equitable partition finer than the current one,
    /// using the cells in `queue` as initial splitters. Returns a trace hash that
    /// depends only on the isomorphism type of the (graph, partition) pair.
    pub(crate) fn refine(&mut self, g: &Graph, queue: Vec<usize>) -> u64 {
        let n = self.order();
        let mut trace = mix(0, self.cells as u64);
        let mut in_queue = vec![false; n];
        let mut queue: VecDeque<usize> = queue.into();
        for &s in &queue {
            in_queue[s] = true;
        }
        let mut counts = vec![0usize; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut touched_cells: Vec<usize> = Vec::new();
        let mut cell_marked = vec![false; n];
        let mut members: Vec<usize> = Vec::new();
        let mut fragments: Vec<(usize, usize, usize)> = Vec::new();

        while let Some(w) = queue.pop_front() {
            in_queue[w] = false;
            if self.is_discrete() {
                break;
            }
            members.clear();
            members.extend_from_slice(self.cell(w));
            for &x in &members {
                for u in g.neighbors(x) {
                    if counts[u] == 0 {
                        touched.push(u);
                    }
                    counts[u] += 1;
                }
            }
            for &u in &touched {
                let c = self.cell_of[u];
                if !cell_marked[c] {
                    cell_marked[c] = true;
                    touched_cells.push(c);
                }
            }
            touched_cells.sort_unstable();
            trace = mix(trace, w as u64);
            for &c in &touched_cells {
                cell_marked[c] = false;
                let l = self.len[c];
                if l == 1 {
                    trace = mix(trace, ((c as u64) << 32) ^ counts[self.lab[c]] as u64);
                    continue;
                }
                let slice = &mut self.lab[c..c + l];
                slice.sort_by_key(|&v| counts[v]);
                fragments.clear();
                let mut fs = 0;
                for i in 1..=l {
                    if i == l || counts[slice[i]] != counts[slice[fs]] {
                        fragments.push((c + fs, i - fs, counts[slice[fs]]));
                        fs = i;
                    }
                }
                trace = mix(trace, c as u64);
                for &(_, fl, fc) in &fragments {
                    trace = mix(trace, ((fc as u64) << 32) ^ fl as u64);
                }
                if fragments.len() == 1 {
                    continue;
                }
                for i in c..c + l {
                    self.pos[self.lab[i]] = i;
                }
                for &(fstart, fl, _) in &fragments {
                    self.len[fstart] = fl;
                    for i in fstart..fstart + fl {
                        self.cell_of[self.lab[i]] = fstart;
                    }
                }
                self.cells += fragments.len() - 1;
                if in_queue[c] {
                    for &(fstart, _, _) in &fragments[1..] {
                        in_queue[fstart] = true;
                        queue.push_back(fstart);
                    }
                } else {
                    let mut largest = 0;
                    for (i, f) in fragments.iter().enumerate() {
                        if f.1 > fragments[largest].1 {
                            largest = i;
                        }
                    }
                    for (i, &(fstart, _, _)) in fragments.iter().enumerate() {
                        if i != largest {
                            in_queue[fstart] = true;
                            queue.push_back(fstart);
                        }
                    }
                }
            }
            for &u in &touched {
                counts[u] = 0;
            }
            touched.clear();
            touched_cells.clear();
        }
        mix(trace, self.cells as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, petersen};

    #[test]
    fn complete_graph_stays_one_class() {
        let g = complete_graph(4).unwrap();
        let c = refine(&g, &Coloring::uniform(4)).unwrap();
        assert_eq!(c.classes().len(), 1);
    }

    #[test]
    fn path_splits_by_degree() {
        let g = path_graph(3).unwrap();
        let c = refine(&g, &Coloring::uniform(3)).unwrap();
        let mut classes = c.classes();
        classes.sort();
        assert_eq!(classes, vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn individualized_hexagon_is_equitable() {
        let g = cycle_graph(6).unwrap();
        let mut colors = vec![0; 6];
        colors[0] = 1;
        let c = refine(&g, &Coloring::new(colors)).unwrap();
        assert!(c.is_equitable(&g));
        // distance classes from vertex 0: {0}, {1,5}, {2,4}, {3}
        assert_eq!(c.classes().len(), 4);
    }

    #[test]
    fn refinement_only_splits() {
        let g = petersen();
        let initial = Coloring::new(vec![0, 0, 0, 1, 1, 1, 0, 0, 2, 2]);
        let refined = refine(&g, &initial).unwrap();
        assert!(refined.is_equitable(&g));
        for u in 0..10 {
            for v in 0..10 {
                if refined.color(u) == refined.color(v) {
                    assert_eq!(initial.color(u), initial.color(v));
                }
            }
        }
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(refine(&complete_graph(3).unwrap(), &Coloring::uniform(2)).is_err());
    }
}
