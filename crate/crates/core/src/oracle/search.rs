//! Exact branch-and-bound searches on graphs with at most 128 vertices.

use crate::graph::Graph;

pub(crate) type Mask = u128;

fn bit(v: usize) -> Mask {
    1 << v
}

fn lowest(m: Mask) -> usize {
    m.trailing_zeros() as usize
}

pub(crate) fn members(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(lowest(m));
        m &= m - 1;
    }
    out
}

pub(crate) fn full(n: usize) -> Mask {
    if n == 128 {
        Mask::MAX
    } else {
        bit(n) - 1
    }
}

/// Adjacency rows as masks; `complement` flips every non-loop pair.
pub(crate) fn adjacency(graph: &Graph, complement: bool) -> Vec<Mask> {
    let n = graph.vertex_count();
    assert!(n <= 128, "mask search needs at most 128 vertices");
    (0..n)
        .map(|v| {
            let row = graph.row(v);
            let mut m = row[0] as Mask;
            if row.len() > 1 {
                m |= (row[1] as Mask) << 64;
            }
            if complement {
                m = !m & full(n) & !bit(v);
            }
            m
        })
        .collect()
}

/// Maximum clique search with greedy-colouring bounds.
pub(crate) struct CliqueSearch<'a> {
    adj: &'a [Mask],
    current: Vec<usize>,
    best: Vec<usize>,
    floor: usize,
    stop_at: Option<usize>,
    pub(crate) nodes: u64,
}

impl<'a> CliqueSearch<'a> {
    pub(crate) fn new(adj: &'a [Mask]) -> Self {
        CliqueSearch {
            adj,
            current: Vec::new(),
            best: Vec::new(),
            floor: 0,
            stop_at: None,
            nodes: 0,
        }
    }

    /// A maximum clique inside `candidates`, sorted.
    pub(crate) fn maximum(mut self, candidates: Mask) -> (Vec<usize>, u64) {
        self.expand(candidates);
        let mut best = self.best;
        best.sort_unstable();
        (best, self.nodes)
    }

    /// Whether `candidates` holds a clique of `size` vertices.
    pub(crate) fn has_clique(adj: &[Mask], candidates: Mask, size: usize, nodes: &mut u64) -> bool {
        if size == 0 {
            return true;
        }
        let mut s = CliqueSearch::new(adj);
        s.floor = size - 1;
        s.stop_at = Some(size);
        s.expand(candidates);
        *nodes += s.nodes;
        s.best.len() >= size
    }

    fn done(&self) -> bool {
        self.stop_at.is_some_and(|t| self.best.len() >= t)
    }

    fn bound(&self) -> usize {
        self.best.len().max(self.floor)
    }

    /// Sequential greedy colouring of `p` in index order; returns vertices
    /// sorted by colour with the colour number of each.
    fn colour_sort(&self, p: Mask) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count_ones() as usize);
        let mut colours = Vec::with_capacity(order.capacity());
        let mut uncoloured = p;
        let mut k = 0;
        while uncoloured != 0 {
            k += 1;
            let mut q = uncoloured;
            while q != 0 {
                let v = lowest(q);
                q &= !bit(v) & !self.adj[v];
                uncoloured &= !bit(v);
                order.push(v);
                colours.push(k);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut p: Mask) {
        self.nodes += 1;
        let (order, colours) = self.colour_sort(p);
        for i in (0..order.len()).rev() {
            if self.current.len() + colours[i] <= self.bound() || self.done() {
                return;
            }
            let v = order[i];
            self.current.push(v);
            let next = p & self.adj[v];
            if next == 0 {
                if self.current.len() > self.bound() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p &= !bit(v);
        }
    }
}

/// The lexicographically smallest sorted clique of `size` vertices, built by
/// fixing vertices in index order whenever a completion still exists.
pub(crate) fn smallest_clique(adj: &[Mask], size: usize, nodes: &mut u64) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut p = full(adj.len());
    while chosen.len() < size {
        assert!(p != 0, "no clique of the requested size");
        let v = lowest(p);
        let next = p & adj[v];
        if CliqueSearch::has_clique(adj, next, size - chosen.len() - 1, nodes) {
            chosen.push(v);
            p = next;
        }
        // v is either taken or ruled out, and later vertices never precede it
        p &= !bit(v);
    }
    chosen
}

/// DSATUR backtracking for a proper colouring with at most `k` colours,
/// extending whatever was set with [`Colouring::fix`].
pub(crate) struct Colouring<'a> {
    adj: &'a [Mask],
    k: usize,
    colour: Vec<Option<usize>>,
    classes: Vec<Mask>,
    pub(crate) nodes: u64,
}

impl<'a> Colouring<'a> {
    pub(crate) fn new(adj: &'a [Mask], k: usize) -> Self {
        Colouring {
            adj,
            k,
            colour: vec![None; adj.len()],
            classes: vec![0; k],
            nodes: 0,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = Some(c);
        self.classes[c] |= bit(v);
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = None;
        self.classes[c] &= !bit(v);
    }

    fn forbidden(&self, v: usize) -> Mask {
        (0..self.k)
            .filter(|&c| self.classes[c] & self.adj[v] != 0)
            .fold(0, |acc, c| acc | bit(c))
    }

    fn used(&self) -> usize {
        self.classes.iter().rposition(|&m| m != 0).map_or(0, |c| c + 1)
    }

    /// Fixes `v` to colour `c`; false if that clashes with a neighbour.
    pub(crate) fn fix(&mut self, v: usize, c: usize) -> bool {
        if c >= self.k || self.forbidden(v) >> c & 1 == 1 {
            return false;
        }
        self.assign(v, c);
        true
    }

    pub(crate) fn colours(&self) -> Vec<usize> {
        self.colour.iter().map(|c| c.expect("complete colouring")).collect()
    }

    /// Completes the colouring if possible.
    pub(crate) fn solve(&mut self) -> bool {
        self.nodes += 1;
        let n = self.adj.len();
        let uncoloured: Mask = (0..n).filter(|&v| self.colour[v].is_none()).fold(0, |m, v| m | bit(v));
        if uncoloured == 0 {
            return true;
        }
        // most saturated, then most uncoloured neighbours, then lowest index
        let mut pick = None;
        let mut key = (0, 0);
        for v in members(uncoloured) {
            let sat = self.forbidden(v).count_ones();
            let deg = (self.adj[v] & uncoloured).count_ones();
            if pick.is_none() || (sat, deg) > key {
                pick = Some(v);
                key = (sat, deg);
            }
        }
        let v = pick.expect("an uncoloured vertex");
        let forbidden = self.forbidden(v);
        let limit = (self.used() + 1).min(self.k);
        for c in 0..limit {
            if forbidden >> c & 1 == 1 {
                continue;
            }
            self.assign(v, c);
            if self.solve() {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

/// Greedy DSATUR colouring, used as the starting upper bound.
pub(crate) fn dsatur_greedy(adj: &[Mask]) -> Vec<usize> {
    let n = adj.len();
    let mut colour: Vec<Option<usize>> = vec![None; n];
    for _ in 0..n {
        let mut pick = None;
        let mut key = (0, 0);
        for v in (0..n).filter(|&v| colour[v].is_none()) {
            let forbidden: u128 = members(adj[v])
                .into_iter()
                .filter_map(|w| colour[w])
                .fold(0, |m, c| m | 1 << c);
            let deg = members(adj[v]).into_iter().filter(|&w| colour[w].is_none()).count();
            let k = (forbidden.count_ones(), deg);
            if pick.is_none() || k > key {
                pick = Some(v);
                key = k;
            }
        }
        let v = pick.expect("an uncoloured vertex");
        let used: u128 = members(adj[v])
            .into_iter()
            .filter_map(|w| colour[w])
            .fold(0, |m, c| m | 1 << c);
        colour[v] = Some((!used).trailing_zeros() as usize);
    }
    colour.into_iter().map(|c| c.expect("coloured")).collect()
}

/// Maximum independent set size by checking every subset; at most 20 vertices.
pub(crate) fn exhaustive_alpha(graph: &Graph) -> usize {
    let n = graph.vertex_count();
    assert!(n <= 20, "exhaustive search needs at most 20 vertices");
    let adj: Vec<u32> = (0..n).map(|v| graph.row(v)[0] as u32).collect();
    let mut best = 0;
    for set in 0u32..(1 << n) {
        let size = set.count_ones();
        if size as usize <= best {
            continue;
        }
        let mut rest = set;
        let mut independent = true;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            if adj[v] & set != 0 {
                independent = false;
                break;
            }
            rest &= rest - 1;
        }
        if independent {
            best = size as usize;
        }
    }
    best
}
