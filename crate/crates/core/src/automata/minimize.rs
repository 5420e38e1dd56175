//! Hopcroft partition refinement followed by breadth-first renumbering.

use super::Dfa;

/// Canonical minimal DFA for the language of `d`.
///
/// Unreachable states are dropped, equivalent states merged with Hopcroft's
/// `O(k log k)` refinement, and the quotient renumbered in breadth-first
/// first-visit order from the start (symbol `0` before `1`).
pub fn minimize(d: &Dfa) -> Dfa {
    let trimmed = renumber_reachable(d);
    let block_of = hopcroft(&trimmed);
    let blocks = block_of.iter().copied().max().map_or(0, |m| m + 1);

    let mut rep = vec![usize::MAX; blocks];
    for (q, &b) in block_of.iter().enumerate() {
        if rep[b] == usize::MAX {
            rep[b] = q;
        }
    }
    let quotient = Dfa::from_parts(
        block_of[trimmed.start()],
        rep.iter()
            .map(|&q| block_of[trimmed.next(q, false)])
            .collect(),
        rep.iter()
            .map(|&q| block_of[trimmed.next(q, true)])
            .collect(),
        rep.iter().map(|&q| trimmed.is_accepting(q)).collect(),
    );
    renumber_reachable(&quotient)
}

/// Keeps only states reachable from the start, numbered in BFS first-visit
/// order with the start as `0`.
pub(crate) fn renumber_reachable(d: &Dfa) -> Dfa {
    let k = d.num_states();
    let mut id = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    id[d.start()] = 0;
    order.push(d.start());
    let mut head = 0;
    while head < order.len() {
        let q = order[head];
        head += 1;
        for bit in [false, true] {
            let t = d.next(q, bit);
            if id[t] == usize::MAX {
                id[t] = order.len();
                order.push(t);
            }
        }
    }
    Dfa::from_parts(
        0,
        order.iter().map(|&q| id[d.next(q, false)]).collect(),
        order.iter().map(|&q| id[d.next(q, true)]).collect(),
        order.iter().map(|&q| d.is_accepting(q)).collect(),
    )
}

/// Block index per state for the coarsest language-respecting partition.
pub(crate) fn hopcroft(d: &Dfa) -> Vec<usize> {
    let k = d.num_states();

    // Inverse transitions in CSR layout, one table per symbol.
    let inverse: [(Vec<usize>, Vec<usize>); 2] = [false, true].map(|bit| {
        let mut offsets = vec![0usize; k + 1];
        for q in 0..k {
            offsets[d.next(q, bit) + 1] += 1;
        }
        for i in 0..k {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut sources = vec![0usize; k];
        for q in 0..k {
            let t = d.next(q, bit);
            sources[fill[t]] = q;
            fill[t] += 1;
        }
        (offsets, sources)
    });

    let (acc, rej): (Vec<usize>, Vec<usize>) = (0..k).partition(|&q| d.is_accepting(q));
    let mut blocks: Vec<Vec<usize>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
    let mut block_of = vec![0usize; k];
    for (b, members) in blocks.iter().enumerate() {
        for &q in members {
            block_of[q] = b;
        }
    }
    if blocks.len() == 1 {
        return block_of;
    }

    let mut pending: Vec<[bool; 2]> = vec![[false; 2]; blocks.len()];
    let mut work: Vec<(usize, usize)> = Vec::new();
    let smaller = if blocks[0].len() <= blocks[1].len() {
        0
    } else {
        1
    };
    for sym in 0..2 {
        work.push((smaller, sym));
        pending[smaller][sym] = true;
    }

    let mut in_preimage = vec![false; k];
    let mut hits = vec![0usize; 0];
    let mut touched: Vec<usize> = Vec::new();

    while let Some((splitter, sym)) = work.pop() {
        pending[splitter][sym] = false;
        let (offsets, sources) = &inverse[sym];

        let mut preimage = Vec::new();
        for &q in &blocks[splitter] {
            for &p in &sources[offsets[q]..offsets[q + 1]] {
                if !in_preimage[p] {
                    in_preimage[p] = true;
                    preimage.push(p);
                }
            }
        }

        hits.resize(blocks.len(), 0);
        for &p in &preimage {
            let b = block_of[p];
            if hits[b] == 0 {
                touched.push(b);
            }
            hits[b] += 1;
        }

        for b in touched.drain(..) {
            let count = std::mem::take(&mut hits[b]);
            if count == blocks[b].len() {
                continue;
            }
            let (inside, outside): (Vec<usize>, Vec<usize>) =
                blocks[b].iter().partition(|&&q| in_preimage[q]);
            let fresh = blocks.len();
            for &q in &inside {
                block_of[q] = fresh;
            }
            blocks[b] = outside;
            blocks.push(inside);
            pending.push([false; 2]);
            hits.push(0);
            for s in 0..2 {
                let pick = if pending[b][s] || blocks[fresh].len() <= blocks[b].len() {
                    fresh
                } else {
                    b
                };
                if !pending[pick][s] {
                    pending[pick][s] = true;
                    work.push((pick, s));
                }
            }
        }

        for p in preimage {
            in_preimage[p] = false;
        }
    }
    block_of
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{all_strings, staircase_pair};

    #[test]
    fn all_accepting_collapses_to_one_state() {
        let d = Dfa::new(0, vec![1, 0], vec![1, 1], vec![true, true]).unwrap();
        assert_eq!(minimize(&d), all_strings());
    }

    #[test]
    fn canonical_input_is_fixed_point() {
        for k in 2..=6 {
            let (a, b) = staircase_pair(k);
            assert_eq!(minimize(&a), a);
            assert_eq!(minimize(&b), b);
        }
    }

    #[test]
    fn drops_unreachable_and_renumbers() {
        // State 0 is unreachable; start is 2.
        let d = Dfa::new(2, vec![0, 1, 1], vec![0, 2, 2], vec![true, true, false]).unwrap();
        let m = minimize(&d);
        assert_eq!(m.num_states(), 2);
        assert_eq!(m.start(), 0);
        assert_eq!(m.delta0(), &[1, 1]);
        assert_eq!(m.delta1(), &[0, 0]);
        assert_eq!(m.accepting(), &[false, true]);
    }
}
