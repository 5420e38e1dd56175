#![allow(dead_code)]

use rand::Rng;
use teachdim::{BinaryString, Dfa};

/// A uniformly random total DFA with `n` states and start state 0.
pub fn random_dfa(rng: &mut impl Rng, n: usize) -> Dfa {
    let d0 = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let d1 = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let acc = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(0, d0, d1, acc).unwrap()
}

/// Every DFA with `n` states, start state 0.
pub fn all_dfas(n: usize) -> Vec<Dfa> {
    let slots = 2 * n;
    let mut out = Vec::new();
    let total = n.pow(slots as u32);
    for code in 0..total {
        let mut c = code;
        let mut targets = Vec::with_capacity(slots);
        for _ in 0..slots {
            targets.push(c % n);
            c /= n;
        }
        for acc in 0..1u32 << n {
            let accepting = (0..n).map(|q| acc >> q & 1 == 1).collect();
            out.push(Dfa::new(0, targets[..n].to_vec(), targets[n..].to_vec(), accepting).unwrap());
        }
    }
    out
}

/// Shortlex-least word on which the two machines disagree, searching words
/// up to `max_len`.
pub fn brute_distinguish(a: &Dfa, b: &Dfa, max_len: usize) -> Option<BinaryString> {
    BinaryString::all_up_to(max_len).find(|w| a.run(w) != b.run(w))
}

/// Number of Myhill-Nerode classes among reachable states, by comparing
/// acceptance of every suffix up to `n - 1` symbols.
pub fn brute_state_count(d: &Dfa) -> usize {
    let n = d.num_states();
    let mut reachable = vec![false; n];
    let mut stack = vec![d.start()];
    reachable[d.start()] = true;
    while let Some(q) = stack.pop() {
        for t in [d.next(q, false), d.next(q, true)] {
            if !reachable[t] {
                reachable[t] = true;
                stack.push(t);
            }
        }
    }
    let suffixes: Vec<BinaryString> = BinaryString::all_up_to(n.saturating_sub(1)).collect();
    let mut signatures: Vec<Vec<bool>> = (0..n)
        .filter(|&q| reachable[q])
        .map(|q| {
            suffixes
                .iter()
                .map(|s| d.is_accepting(d.walk(q, s.bits())))
                .collect()
        })
        .collect();
    signatures.sort();
    signatures.dedup();
    signatures.len()
}
