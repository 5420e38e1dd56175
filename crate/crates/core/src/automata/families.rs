use super::Dfa;

/// The one-state machine accepting every word.
pub fn all_strings() -> Dfa {
    Dfa::from_parts(0, vec![0], vec![0], vec![true])
}

/// The one-state machine accepting nothing.
pub fn no_strings() -> Dfa {
    Dfa::from_parts(0, vec![0], vec![0], vec![false])
}

/// Two `k`-state machines whose shortest distinguishing word is
/// `0^(k-1) 1^(k-1)`.
///
/// States `0..k`: symbol `0` climbs one state (the last state loops), symbol
/// `1` descends one state (state `0` loops). State `0` is the only rejecting
/// state. The machines differ only on symbol `1` from the top state: `a`
/// stays put, `b` descends like every other state. Reaching the top takes
/// `k-1` zeros, and from there `b` needs `k-1` ones to reach state `0`.
///
/// Panics if `k < 2`.
pub fn staircase_pair(k: usize) -> (Dfa, Dfa) {
    assert!(k >= 2, "the pair needs at least two states");
    let top = k - 1;
    let delta0: Vec<usize> = (0..k).map(|q| (q + 1).min(top)).collect();
    let delta1_b: Vec<usize> = (0..k).map(|q| q.saturating_sub(1)).collect();
    let mut delta1_a = delta1_b.clone();
    delta1_a[top] = top;
    let accepting: Vec<bool> = (0..k).map(|q| q != 0).collect();
    (
        Dfa::from_parts(0, delta0.clone(), delta1_a, accepting.clone()),
        Dfa::from_parts(0, delta0, delta1_b, accepting),
    )
}
