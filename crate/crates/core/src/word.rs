//! The free-group word operad: arity `n` is the set of reduced words in
//! `x1, …, xn`, composition substitutes a word for a generator.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{FiniteGroup, FiniteMonoidTable};
use crate::operad::{Algebra, Operad};
use crate::permutation::Permutation;

/// `x_gen` or `x_gen^-1`. Orders `x1 < x1^-1 < x2 < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Self { inverse: !self.inverse, ..self }
    }

    fn cancels(self, other: Self) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.generator, if self.inverse { "^-1" } else { "" })
    }
}

/// A freely reduced word of a given arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    arity: usize,
    letters: Vec<Letter>,
}

fn check_indices(letters: &[Letter], n: usize) -> Result<()> {
    match letters.iter().find(|l| l.generator == 0 || l.generator > n) {
        Some(l) => Err(Error::IndexOutOfRange { index: l.generator, arity: n }),
        None => Ok(()),
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(letters: &[Letter], n: usize) -> Result<ReducedWord> {
    check_indices(letters, n)?;
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    Ok(ReducedWord { arity: n, letters: stack })
}

/// A single left-to-right pass that drops cancelling pairs without
/// revisiting; leaves e.g. `x1 x2 x2^-1 x1^-1` as `x1 x1^-1`.
fn single_pass_reduce(letters: &[Letter], n: usize) -> ReducedWord {
    let mut out = Vec::with_capacity(letters.len());
    let mut k = 0;
    while k < letters.len() {
        if k + 1 < letters.len() && letters[k].cancels(letters[k + 1]) {
            k += 2;
        } else {
            out.push(letters[k]);
            k += 1;
        }
    }
    ReducedWord { arity: n, letters: out }
}

impl ReducedWord {
    /// Accepts only words that are already reduced.
    pub fn new(arity: usize, letters: Vec<Letter>) -> Result<Self> {
        let w = free_reduce(&letters, arity)?;
        if w.letters.len() != letters.len() {
            return Err(Error::Parse(format!("word {} is not freely reduced", Self { arity, letters })));
        }
        Ok(w)
    }

    pub fn empty(arity: usize) -> Self {
        Self { arity, letters: Vec::new() }
    }

    /// The word `x_i` in arity `n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Self::new(n, vec![Letter::new(i, false)])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The inverse group element.
    pub fn inverse(&self) -> Self {
        Self { arity: self.arity, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// Group product in the free group (a test utility; not operad structure).
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: other.arity });
        }
        let mut all = self.letters.clone();
        all.extend_from_slice(&other.letters);
        free_reduce(&all, self.arity)
    }

    /// Parses `"x1 x2^-1"`; `"e"` or the empty string is the empty word.
    pub fn parse(s: &str, arity: usize) -> Result<Self> {
        Self::new(arity, parse_letters(s)?)
    }
}

/// Parses a letter sequence such as `"x1 x2 x2^-1"` without reducing it.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Ok(Vec::new());
    }
    s.split_whitespace()
        .map(|tok| {
            let (body, inverse) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let gen = body
                .strip_prefix('x')
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("bad letter {tok:?}")))?;
            Ok(Letter::new(gen, inverse))
        })
        .collect()
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn substitute(w1: &ReducedWord, i: usize, w2: &ReducedWord) -> Result<Vec<Letter>> {
    let (m, n) = (w1.arity, w2.arity);
    if i == 0 || i > m {
        return Err(Error::PositionOutOfRange { position: i, arity: m });
    }
    let shifted: Vec<Letter> = w2.letters.iter().map(|l| Letter::new(l.generator + i - 1, l.inverse)).collect();
    let mut out = Vec::new();
    for &l in &w1.letters {
        if l.generator == i {
            if l.inverse {
                out.extend(shifted.iter().rev().map(|x| x.inv()));
            } else {
                out.extend_from_slice(&shifted);
            }
        } else if l.generator < i {
            out.push(l);
        } else {
            out.push(Letter::new(l.generator + n - 1, l.inverse));
        }
    }
    Ok(out)
}

/// `w1 ∘_i w2`: substitutes `w2`, shifted into slots `i..i+n-1`, for `x_i`
/// and reduces.
pub fn word_compose(w1: &ReducedWord, i: usize, w2: &ReducedWord) -> Result<ReducedWord> {
    let letters = substitute(w1, i, w2)?;
    free_reduce(&letters, w1.arity + w2.arity - 1)
}

/// `σ·w`: relabels `x_j` as `x_{σ(j)}`.
pub fn word_perm_act(sigma: &Permutation, w: &ReducedWord) -> Result<ReducedWord> {
    if sigma.len() != w.arity {
        return Err(Error::ArityMismatch { expected: w.arity, got: sigma.len() });
    }
    Ok(ReducedWord {
        arity: w.arity,
        letters: w.letters.iter().map(|l| Letter::new(sigma.apply(l.generator), l.inverse)).collect(),
    })
}

/// Evaluates `w` in a group, replacing `x_i` by `args[i-1]`.
pub fn group_eval(w: &ReducedWord, g: &FiniteGroup, args: &[usize]) -> Result<usize> {
    if args.len() != w.arity {
        return Err(Error::ArityMismatch { expected: w.arity, got: args.len() });
    }
    if let Some(&a) = args.iter().find(|&&a| a >= g.order()) {
        return Err(Error::IndexOutOfRange { index: a, arity: g.order() });
    }
    Ok(w.letters.iter().fold(g.unit(), |acc, l| {
        let x = args[l.generator - 1];
        g.mul(acc, if l.inverse { g.inv(x) } else { x })
    }))
}

/// [`group_eval`] on a monoid table, which must be a group.
pub fn group_eval_table(w: &ReducedWord, table: &FiniteMonoidTable, args: &[usize]) -> Result<usize> {
    group_eval(w, &FiniteGroup::new(table.clone())?, args)
}

/// All reduced words of length at most `max_length`, by length and then
/// lexicographically in the letter order.
pub fn word_enumerate(n: usize, max_length: usize) -> Vec<ReducedWord> {
    let alphabet: Vec<Letter> = (1..=n).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)]).collect();
    let mut out = vec![ReducedWord::empty(n)];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_length {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.last().is_some_and(|&t| t.cancels(l)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|letters| ReducedWord { arity: n, letters: letters.clone() }));
        layer = next;
    }
    out
}

/// Closed-form count of reduced words of length at most `max_length`.
pub fn word_count(n: usize, max_length: usize) -> usize {
    1 + (1..=max_length).map(|l| 2 * n * (2 * n).saturating_sub(1).pow(l as u32 - 1)).sum::<usize>()
}

/// Corruptions of word composition used as negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordFault {
    #[default]
    None,
    /// Reduction makes one pass and never revisits a cancellation.
    SinglePassReduction,
}

/// The operad of reduced words; `enumerate` bounds word length.
#[derive(Clone, Copy, Debug, Default)]
pub struct WordOperad {
    pub fault: WordFault,
}

impl WordOperad {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fault(fault: WordFault) -> Self {
        Self { fault }
    }
}

impl Operad for WordOperad {
    type Element = ReducedWord;

    fn name(&self) -> String {
        match self.fault {
            WordFault::None => "free group words".into(),
            WordFault::SinglePassReduction => "free group words (single-pass reduction)".into(),
        }
    }

    fn arity(&self, e: &ReducedWord) -> usize {
        e.arity
    }

    fn compose_at(&self, w1: &ReducedWord, i: usize, w2: &ReducedWord) -> Result<ReducedWord> {
        match self.fault {
            WordFault::None => word_compose(w1, i, w2),
            WordFault::SinglePassReduction => {
                let letters = substitute(w1, i, w2)?;
                Ok(single_pass_reduce(&letters, w1.arity + w2.arity - 1))
            }
        }
    }

    fn act(&self, sigma: &Permutation, w: &ReducedWord) -> Result<ReducedWord> {
        word_perm_act(sigma, w)
    }

    fn unit(&self) -> ReducedWord {
        ReducedWord { arity: 1, letters: vec![Letter::new(1, false)] }
    }

    fn enumerate(&self, arity: usize, size_bound: usize) -> Vec<ReducedWord> {
        word_enumerate(arity, size_bound)
    }
}

/// A finite group acting on itself through word evaluation.
pub struct GroupAlgebra<'a>(pub &'a FiniteGroup);

impl Algebra<WordOperad> for GroupAlgebra<'_> {
    type Value = usize;

    fn name(&self) -> String {
        format!("group of order {}", self.0.order())
    }

    fn carrier(&self) -> Vec<usize> {
        (0..self.0.order()).collect()
    }

    fn eval(&self, w: &ReducedWord, args: &[usize]) -> Result<usize> {
        group_eval(w, self.0, args)
    }
}

/// A monoid with an involution `s`, evaluating `x_i^-1` as `s(a_i)`.
pub struct InvolutionMonoidAlgebra {
    pub monoid: FiniteMonoidTable,
    pub involution: Vec<usize>,
}

impl Algebra<WordOperad> for InvolutionMonoidAlgebra {
    type Value = usize;

    fn name(&self) -> String {
        format!("monoid of order {} with involution {:?}", self.monoid.order(), self.involution)
    }

    fn carrier(&self) -> Vec<usize> {
        (0..self.monoid.order()).collect()
    }

    fn eval(&self, w: &ReducedWord, args: &[usize]) -> Result<usize> {
        if args.len() != w.arity() {
            return Err(Error::IncompleteEvaluation(format!("{} arguments for arity {}", args.len(), w.arity())));
        }
        w.letters().iter().try_fold(self.monoid.unit(), |acc, l| {
            let a = args[l.generator - 1];
            let x = if l.inverse {
                *self.involution.get(a).ok_or_else(|| Error::IncompleteEvaluation(format!("no involution value at {a}")))?
            } else {
                a
            };
            Ok(self.monoid.mul(acc, x))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{check_algebra_action, check_operad_axioms};
    use proptest::prelude::*;

    fn w(s: &str, n: usize) -> ReducedWord {
        ReducedWord::parse(s, n).unwrap()
    }

    fn raw(s: &str) -> Vec<Letter> {
        s.split_whitespace()
            .map(|t| {
                let inv = t.ends_with("^-1");
                let g = t.trim_start_matches('x').trim_end_matches("^-1").parse().unwrap();
                Letter::new(g, inv)
            })
            .collect()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::new(FiniteMonoidTable::symmetric_group(3).unwrap()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert!(free_reduce(&raw("x1 x1^-1"), 1).unwrap().is_empty());
        assert_eq!(free_reduce(&raw("x1 x2 x2^-1 x1"), 2).unwrap(), w("x1 x1", 2));
        assert_eq!(free_reduce(&raw("x1 x2^-1"), 2).unwrap(), w("x1 x2^-1", 2));
        assert!(matches!(free_reduce(&raw("x3"), 2), Err(Error::IndexOutOfRange { index: 3, arity: 2 })));
    }

    #[test]
    fn composition_examples() {
        assert_eq!(word_compose(&w("x1 x2", 2), 1, &w("x1^-1", 1)).unwrap(), w("x1^-1 x2", 2));
        let r = word_compose(&w("x1 x2 x1^-1", 2), 2, &ReducedWord::empty(0)).unwrap();
        assert_eq!(r, ReducedWord::empty(1));
        assert!(word_compose(&w("x1", 1), 2, &w("x1", 1)).is_err());
    }

    #[test]
    fn action_examples() {
        let swap = Permutation::new(vec![2, 1]).unwrap();
        let v = w("x1 x2^-1", 2);
        assert_eq!(word_perm_act(&swap, &v).unwrap(), w("x2 x1^-1", 2));
        assert_eq!(word_perm_act(&swap, &word_perm_act(&swap, &v).unwrap()).unwrap(), v);
    }

    #[test]
    fn enumeration_examples() {
        let one: Vec<String> = word_enumerate(1, 2).iter().map(|w| w.to_string()).collect();
        assert_eq!(one, ["e", "x1", "x1^-1", "x1 x1", "x1^-1 x1^-1"]);
        assert_eq!(word_enumerate(2, 1).len(), 5);
        assert_eq!(word_enumerate(0, 5).len(), 1);
        for n in 0..=3 {
            for l in 0..=4 {
                assert_eq!(word_enumerate(n, l).len(), word_count(n, l));
            }
        }
    }

    #[test]
    fn conjugate_in_s3() {
        let g = s3();
        // (1 2) = [2 1 3] is index 2, (1 2 3) = [2 3 1] is index 3 in lexicographic order
        let perms = Permutation::all(3);
        let idx = |v: Vec<usize>| perms.iter().position(|p| p.images() == v.as_slice()).unwrap();
        let (a, b) = (idx(vec![2, 1, 3]), idx(vec![2, 3, 1]));
        let expect = perms[a].compose(&perms[b]).compose(&perms[a]);
        let got = group_eval(&w("x1 x2 x1^-1", 2), &g, &[a, b]).unwrap();
        assert_eq!(perms[got], expect);
        assert_eq!(group_eval(&ReducedWord::empty(2), &g, &[a, b]).unwrap(), g.unit());
    }

    #[test]
    fn not_a_group() {
        let m = FiniteMonoidTable::new(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        assert!(matches!(group_eval_table(&w("x1", 1), &m, &[1]), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn axioms_pass_and_fault_caught() {
        assert!(check_operad_axioms(&WordOperad::new(), 3, 2).pass());
        let r = check_operad_axioms(&WordOperad::with_fault(WordFault::SinglePassReduction), 3, 3);
        assert!(!r.pass());
    }

    #[test]
    fn acts_on_s3() {
        let g = s3();
        let r = check_algebra_action(&WordOperad::new(), &GroupAlgebra(&g), 2, 3).unwrap();
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn involution_monoid_fails_on_cancellation() {
        let alg = InvolutionMonoidAlgebra {
            monoid: FiniteMonoidTable::from_fn(2, 0, |a, b| a.max(b)).unwrap(),
            involution: vec![0, 1],
        };
        let r = check_algebra_action(&WordOperad::new(), &alg, 2, 3).unwrap();
        assert!(!r.pass());
    }

    #[test]
    fn distinct_words_separated_in_s3() {
        let g = s3();
        let words = word_enumerate(2, 2);
        let sig = |v: &ReducedWord| -> Vec<usize> {
            (0..36).map(|c| group_eval(v, &g, &[c / 6, c % 6]).unwrap()).collect()
        };
        for (k, a) in words.iter().enumerate() {
            for b in &words[k + 1..] {
                assert_ne!(sig(a), sig(b), "{a} vs {b}");
            }
        }
    }

    fn arb_word(n: usize) -> impl Strategy<Value = ReducedWord> {
        prop::collection::vec((1..=n, any::<bool>()), 0..8)
            .prop_map(move |v| free_reduce(&v.into_iter().map(|(g, i)| Letter::new(g, i)).collect::<Vec<_>>(), n).unwrap())
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(v in arb_word(3)) {
            prop_assert_eq!(free_reduce(v.letters(), 3).unwrap(), v.clone());
            prop_assert_eq!(ReducedWord::parse(&v.to_string(), 3).unwrap(), v);
        }

        #[test]
        fn evaluation_respects_composition(a in arb_word(2), b in arb_word(2), i in 1usize..=2, args in prop::collection::vec(0usize..6, 3)) {
            let g = s3();
            let c = word_compose(&a, i, &b).unwrap();
            let inner = group_eval(&b, &g, &args[i - 1..i + 1]).unwrap();
            let mut outer = args[..i - 1].to_vec();
            outer.push(inner);
            outer.extend_from_slice(&args[i + 1..]);
            prop_assert_eq!(group_eval(&c, &g, &args).unwrap(), group_eval(&a, &g, &outer).unwrap());
        }

        #[test]
        fn inverse_multiplies_to_identity(a in arb_word(3)) {
            prop_assert!(a.multiply(&a.inverse()).unwrap().is_empty());
        }
    }
}
