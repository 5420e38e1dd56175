use std::collections::VecDeque;

use super::{BinaryString, Dfa};

/// Language equivalence by the Hopcroft–Karp union-find procedure, near
/// linear in the total number of states.
pub fn equivalent(a: &Dfa, b: &Dfa) -> bool {
    let offset = a.num_states();
    let mut sets = DisjointSets::new(offset + b.num_states());
    let mut stack = vec![(a.start(), b.start())];
    sets.union(a.start(), offset + b.start());

    while let Some((p, q)) = stack.pop() {
        if a.is_accepting(p) != b.is_accepting(q) {
            return false;
        }
        for bit in [false, true] {
            let (p2, q2) = (a.next(p, bit), b.next(q, bit));
            if sets.union(p2, offset + q2) {
                stack.push((p2, q2));
            }
        }
    }
    true
}

/// The shortlex-least word accepted by exactly one of `a` and `b`, or `None`
/// when the languages coincide.
///
/// Breadth-first search over the product graph, expanding `0` before `1`,
/// reaches every state pair first along its shortlex-least access word. Any
/// distinguishing word leads to a disagreeing pair, so the first such pair
/// dequeued yields the shortlex-least witness.
pub fn distinguishing_string(a: &Dfa, b: &Dfa) -> Option<BinaryString> {
    let nb = b.num_states();
    let index = |p: usize, q: usize| p * nb + q;
    // (parent pair, symbol) for each visited pair.
    let mut parent: Vec<Option<(usize, bool)>> = vec![None; a.num_states() * nb];
    let mut seen = vec![false; a.num_states() * nb];
    let mut queue = VecDeque::new();

    let root = index(a.start(), b.start());
    seen[root] = true;
    queue.push_back((a.start(), b.start()));

    while let Some((p, q)) = queue.pop_front() {
        if a.is_accepting(p) != b.is_accepting(q) {
            let mut bits = Vec::new();
            let mut at = index(p, q);
            while let Some((from, bit)) = parent[at] {
                bits.push(bit);
                at = from;
            }
            bits.reverse();
            return Some(BinaryString::from_bits(bits));
        }
        for bit in [false, true] {
            let (p2, q2) = (a.next(p, bit), b.next(q, bit));
            let j = index(p2, q2);
            if !seen[j] {
                seen[j] = true;
                parent[j] = Some((index(p, q), bit));
                queue.push_back((p2, q2));
            }
        }
    }
    None
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if the two were already in the same set.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => self.parent[rx] = ry,
            std::cmp::Ordering::Greater => self.parent[ry] = rx,
            std::cmp::Ordering::Equal => {
                self.parent[ry] = rx;
                self.rank[rx] += 1;
            }
        }
        true
    }
}
