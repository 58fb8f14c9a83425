/// Disjoint sets with path compression and union by size.
#[derive(Clone, Debug)]
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

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// Class index per element; classes numbered by their smallest element.
    pub fn class_map(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[x] = id[r];
        }
        out
    }

    /// Classes as sorted member lists, ordered by smallest member.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        classes_from_map(&self.class_map())
    }
}

pub fn classes_from_map(class_of: &[usize]) -> Vec<Vec<usize>> {
    let k = class_of.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut out = vec![Vec::new(); k];
    for (x, &c) in class_of.iter().enumerate() {
        out[c].push(x);
    }
    out
}
