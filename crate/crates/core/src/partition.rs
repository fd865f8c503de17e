//! Partition structures: a size-tracking disjoint-set forest for block
//! unions, and a refinable partition for splitter-based refinement.

/// Disjoint sets over `0..n` with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Root lookup without path compression.
    pub fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn block_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    /// Unites the sets of `keep` and `other`; the root of `keep`'s set stays
    /// the root. Returns that root.
    pub fn union_into(&mut self, keep: usize, other: usize) -> usize {
        let (a, b) = (self.find(keep), self.find(other));
        if a != b {
            self.parent[b] = a;
            self.size[a] += self.size[b];
        }
        a
    }

    /// All sets, each sorted, ordered by least member.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            by_root[self.root(x)].push(x);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_iter().filter(|b| !b.is_empty()).collect();
        out.sort_by_key(|b| b[0]);
        out
    }
}

/// A partition of `0..n` into contiguous runs of one permutation array.
/// Marked elements of a block are kept in a prefix of its run, so splitting
/// off the marked part costs time proportional to the marks.
#[derive(Debug, Clone)]
pub struct RefinablePartition {
    elems: Vec<usize>,
    loc: Vec<usize>,
    block_of: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    mid: Vec<usize>,
    touched: Vec<usize>,
}

impl RefinablePartition {
    /// Blocks given by a label per element; blocks are numbered in order of
    /// first appearance of their label.
    pub fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut ids = std::collections::HashMap::new();
        let mut block_of = vec![0; n];
        for (x, &l) in labels.iter().enumerate() {
            let next = ids.len();
            block_of[x] = *ids.entry(l).or_insert(next);
        }
        let k = ids.len();
        let mut count = vec![0usize; k];
        for &b in &block_of {
            count[b] += 1;
        }
        let mut start = vec![0usize; k];
        for b in 1..k {
            start[b] = start[b - 1] + count[b - 1];
        }
        let end: Vec<usize> = (0..k).map(|b| start[b] + count[b]).collect();
        let mut fill = start.clone();
        let mut elems = vec![0; n];
        let mut loc = vec![0; n];
        for x in 0..n {
            let b = block_of[x];
            elems[fill[b]] = x;
            loc[x] = fill[b];
            fill[b] += 1;
        }
        RefinablePartition {
            elems,
            loc,
            block_of,
            mid: start.clone(),
            start,
            end,
            touched: Vec::new(),
        }
    }

    pub fn num_blocks(&self) -> usize {
        self.start.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_len(&self, b: usize) -> usize {
        self.end[b] - self.start[b]
    }

    pub fn members(&self, b: usize) -> &[usize] {
        &self.elems[self.start[b]..self.end[b]]
    }

    pub fn mark(&mut self, x: usize) {
        let b = self.block_of[x];
        let i = self.loc[x];
        if i < self.mid[b] {
            return;
        }
        if self.mid[b] == self.start[b] {
            self.touched.push(b);
        }
        let j = self.mid[b];
        let y = self.elems[j];
        self.elems.swap(i, j);
        self.loc[x] = j;
        self.loc[y] = i;
        self.mid[b] += 1;
    }

    /// Splits every block with some but not all members marked; clears all
    /// marks. Returns `(old, new)` pairs where `new` holds the marked part.
    pub fn split_marked(&mut self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in std::mem::take(&mut self.touched) {
            let mid = self.mid[b];
            self.mid[b] = self.start[b];
            if mid == self.end[b] {
                continue;
            }
            let nb = self.start.len();
            self.start.push(self.start[b]);
            self.end.push(mid);
            self.mid.push(self.start[b]);
            self.start[b] = mid;
            self.mid[b] = mid;
            for i in self.start[nb]..self.end[nb] {
                self.block_of[self.elems[i]] = nb;
            }
            out.push((b, nb));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_keeps_requested_root() {
        let mut uf = UnionFind::new(5);
        assert_eq!(uf.union_into(3, 1), 3);
        assert_eq!(uf.union_into(0, 3), 0);
        assert_eq!(uf.find(1), 0);
        assert_eq!(uf.block_size(1), 3);
        assert_eq!(uf.blocks(), vec![vec![0, 1, 3], vec![2], vec![4]]);
    }

    #[test]
    fn refinement_splits_marked_part() {
        let mut p = RefinablePartition::from_labels(&[7, 7, 7, 9, 9]);
        assert_eq!(p.num_blocks(), 2);
        p.mark(1);
        p.mark(1);
        p.mark(3);
        p.mark(4);
        let splits = p.split_marked();
        assert_eq!(splits, vec![(0, 2)]);
        assert_eq!(p.members(2), &[1]);
        let mut rest = p.members(0).to_vec();
        rest.sort();
        assert_eq!(rest, vec![0, 2]);
        assert_eq!(p.block_len(1), 2);
        assert_eq!(p.block_of(1), 2);
        assert!(p.split_marked().is_empty());
    }
}
