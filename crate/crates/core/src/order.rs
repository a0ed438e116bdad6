//! Admissible orders on the family of matrices, admissible column permutations
//! and the variable order they induce.

use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::scroll::{ExtensionSpec, ScrollMatrix};

/// Arc `a -> b` whenever the head of matrix `a` sits in the second row of matrix `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadsDigraph {
    arcs: Vec<Vec<usize>>,
}

impl HeadsDigraph {
    pub fn new(ms: &[ScrollMatrix]) -> Self {
        let arcs = (0..ms.len())
            .map(|a| {
                (0..ms.len())
                    .filter(|&b| b != a && ms[b].second_row_contains(ms[a].head()))
                    .collect()
            })
            .collect();
        HeadsDigraph { arcs }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn successors(&self, a: usize) -> &[usize] {
        &self.arcs[a]
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().enumerate().flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderOutcome {
    Order(Vec<usize>),
    /// A directed cycle of the heads digraph, starting at its smallest index.
    Cycle(Vec<usize>),
}

impl OrderOutcome {
    pub fn order(&self) -> Option<&[usize]> {
        match self {
            OrderOutcome::Order(o) => Some(o),
            OrderOutcome::Cycle(_) => None,
        }
    }
}

/// Places every matrix after all matrices its head points to. Ties go depth first:
/// a matrix that becomes available is placed at once, otherwise the smallest index wins.
pub fn find_admissible_order(ms: &[ScrollMatrix]) -> OrderOutcome {
    let dg = HeadsDigraph::new(ms);
    let k = dg.len();
    let mut waiting: Vec<usize> = (0..k).map(|a| dg.arcs[a].len()).collect();
    let mut unlocks = vec![Vec::new(); k];
    for (a, b) in dg.arcs() {
        unlocks[b].push(a);
    }
    let mut stack: Vec<usize> = (0..k).rev().filter(|&a| waiting[a] == 0).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(b) = stack.pop() {
        order.push(b);
        let mut fresh = Vec::new();
        for &a in &unlocks[b] {
            waiting[a] -= 1;
            if waiting[a] == 0 {
                fresh.push(a);
            }
        }
        fresh.sort_unstable_by(|x, y| y.cmp(x));
        stack.extend(fresh);
    }
    if order.len() == k {
        return OrderOutcome::Order(order);
    }
    let mut placed = vec![false; k];
    order.iter().for_each(|&a| placed[a] = true);
    OrderOutcome::Cycle(find_cycle(&dg, &placed))
}

fn find_cycle(dg: &HeadsDigraph, placed: &[bool]) -> Vec<usize> {
    // Every unplaced vertex has an arc to another unplaced vertex.
    let start = (0..dg.len()).find(|&a| !placed[a]).expect("some matrix is unplaced");
    let mut walk = vec![start];
    let mut at = vec![usize::MAX; dg.len()];
    at[start] = 0;
    loop {
        let cur = *walk.last().expect("walk is nonempty");
        let next = *dg.arcs[cur].iter().find(|&&b| !placed[b]).expect("unplaced vertices keep an arc");
        if at[next] != usize::MAX {
            let mut cycle = walk[at[next]..].to_vec();
            let low = (0..cycle.len()).min_by_key(|&i| cycle[i]).expect("cycle is nonempty");
            cycle.rotate_left(low);
            return cycle;
        }
        at[next] = walk.len();
        walk.push(next);
    }
}

/// Checks the defining conditions of an admissible order position by position.
pub fn check_admissible_order(ms: &[ScrollMatrix], order: &[usize]) -> bool {
    let k = ms.len();
    let mut seen = vec![false; k];
    if order.len() != k || order.iter().any(|&a| a >= k || std::mem::replace(&mut seen[a], true)) {
        return false;
    }
    let head = |p: usize| ms[order[p]].head();
    (0..k).all(|i| {
        let plain = (i + 1..k).all(|j| !ms[order[j]].second_row_contains(head(i)));
        plain
            || (i + 1..k).any(|j| {
                head(i) == ms[order[j]].lower_left()
                    && (0..i).any(|i2| head(i2) == head(j) && (0..i2).all(|j2| head(i) != head(j2)))
            })
    })
}

/// A reordering of the columns of one matrix: position `p` holds original column `image[p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnPermutation {
    pub image: Vec<usize>,
}

impl ColumnPermutation {
    pub fn identity(m: &ScrollMatrix) -> Self {
        ColumnPermutation { image: (0..m.column_count()).collect() }
    }

    /// Leading column first, then the first column of every block, then the second, and so on.
    pub fn interleaved(m: &ScrollMatrix) -> Self {
        let mut image = vec![0];
        let longest = m.blocks.iter().map(|b| b.y.len()).max().unwrap_or(0);
        for i in 0..longest {
            for j in 0..m.blocks.len() {
                let cols = m.block_columns(j);
                if i < cols.len() {
                    image.push(cols.start + i);
                }
            }
        }
        ColumnPermutation { image }
    }

    pub fn apply(&self, m: &ScrollMatrix) -> Vec<(Vertex, Vertex)> {
        let cols = m.columns();
        self.image.iter().map(|&c| cols[c]).collect()
    }

    fn is_permutation(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        self.image.len() == n && self.image.iter().all(|&c| c < n && !std::mem::replace(&mut seen[c], true))
    }
}

/// The column permutation used throughout: the interleaved one.
pub fn pi_star(m: &ScrollMatrix) -> ColumnPermutation {
    ColumnPermutation::interleaved(m)
}

pub fn is_admissible_permutation(m: &ScrollMatrix, p: &ColumnPermutation) -> bool {
    if !p.is_permutation(m.column_count()) || p.image[0] != 0 {
        return false;
    }
    let cols = p.apply(m);
    (1..cols.len()).all(|i| (0..=i).all(|j| cols[i].1 != cols[j].0))
}

/// A total order on variables, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarOrder {
    seq: Vec<Vertex>,
    rank: Vec<usize>,
}

impl VarOrder {
    /// `seq` lists the vertices `0..universe` from largest to smallest, each once.
    pub fn new(seq: Vec<Vertex>, universe: usize) -> Result<Self> {
        let mut rank = vec![usize::MAX; universe];
        for (i, &v) in seq.iter().enumerate() {
            if v.0 >= universe || rank[v.0] != usize::MAX {
                return Err(Error::UnrankedVariable(format!("#{}", v.0)));
            }
            rank[v.0] = i;
        }
        if let Some(missing) = rank.iter().position(|&r| r == usize::MAX) {
            return Err(Error::UnrankedVariable(format!("#{missing}")));
        }
        Ok(VarOrder { seq, rank })
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// 0 for the largest variable.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.rank.get(v.0).copied()
    }

    pub fn greater(&self, a: Vertex, b: Vertex) -> bool {
        self.rank[a.0] < self.rank[b.0]
    }
}

/// Ranks the top rows matrix by matrix along `order`, then everything else by input rank.
pub fn vertex_order(ext: &ExtensionSpec, order: &[usize], perms: &[ColumnPermutation]) -> Result<VarOrder> {
    let ms = ext.matrices();
    let total = ext.graph().len();
    let mut seen = vec![false; total];
    let mut seq = Vec::with_capacity(total);
    for &a in order {
        let m = &ms[a];
        let p = &perms[a];
        if !is_admissible_permutation(m, p) {
            return Err(Error::InvalidPermutation { matrix: a, reason: "not admissible".into() });
        }
        for (top, _) in p.apply(m) {
            if !std::mem::replace(&mut seen[top.0], true) {
                seq.push(top);
            }
        }
    }
    seq.extend((0..total).filter(|&v| !seen[v]).map(Vertex));
    let vo = VarOrder::new(seq, total)?;
    for &a in order {
        let cols = perms[a].apply(&ms[a]);
        let tops_fall = cols.windows(2).all(|w| vo.greater(w[0].0, w[1].0));
        let columns_fall = cols.iter().all(|&(t, b)| vo.greater(t, b));
        if !tops_fall || !columns_fall {
            return Err(Error::OrderViolatesRows { matrix: a });
        }
    }
    Ok(vo)
}

/// Reorders columns so that each bottom entry is followed by the column it heads, when there is one.
pub fn scrollify(top: &[Vertex], bottom: &[Vertex]) -> Vec<usize> {
    let n = top.len().min(bottom.len());
    let mut used = vec![false; n];
    let mut out = Vec::with_capacity(n);
    let mut cur = 0;
    while out.len() < n {
        used[cur] = true;
        out.push(cur);
        let chained = (0..n).find(|&c| !used[c] && top[c] == bottom[cur]);
        match chained.or_else(|| (0..n).find(|&c| !used[c])) {
            Some(c) => cur = c,
            None => break,
        }
    }
    out
}
