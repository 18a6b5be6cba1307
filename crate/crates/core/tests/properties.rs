use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treestack::analysis::{normalize_root_acceptance, pda_to_tree_stack};
use treestack::automaton::{Automaton, AutomatonBuilder, Instruction, Predicate, StorageKind};
use treestack::constructions::{
    free_product, z_word_problem_automaton, z_word_problem_automaton_named,
};
use treestack::mcfg::{apply_rewriting, Grammar, LinearRewriting, Nonterminal, Rule, Token, Tuple};
use treestack::search::{accepts, find_accepting_run, search, SearchBudget, Strategy, Verdict};
use treestack::Label;

fn budget(n: usize) -> SearchBudget {
    SearchBudget {
        max_configurations: n,
        max_eps_moves_between_letters: n,
        max_storage_cells: 20 * n,
    }
}

fn exponent_sum(w: &[usize]) -> i64 {
    w.iter().map(|&a| if a == 0 { 1 } else { -1 }).sum()
}

/// Raw transition: from, read, predicate kind and label, instruction kind,
/// branch, label, to.
type Raw = (usize, Option<usize>, u8, u8, u8, i32, u8, usize);

fn raw_transitions(instructions: u8) -> impl proptest::strategy::Strategy<Value = Vec<Raw>> {
    prop::collection::vec(
        (
            0..3usize,
            prop::option::of(0..2usize),
            0..3u8,
            0..3u8,
            0..instructions,
            0..2i32,
            0..2u8,
            0..3usize,
        ),
        1..9,
    )
}

/// Tree-stack automaton over `a`, `b` with symbols `x`, `y`. Instruction kinds
/// 0..5 are id, push, down, set and up.
fn tree_automaton(raw: &[Raw], finals: &[usize]) -> Automaton {
    let mut b = AutomatonBuilder::new(StorageKind::TreeStack);
    let qs: Vec<_> = (0..3).map(|i| b.state(&format!("q{i}"))).collect();
    for a in ["a", "b"] {
        b.letter(a);
    }
    let syms = [b.sym("x"), b.sym("y")];
    let labels = [Label::Root, syms[0], syms[1]];
    b.set_initial(qs[0]);
    for &f in finals {
        b.add_final(qs[f]);
    }
    for &(from, read, pk, pl, ik, branch, il, to) in raw {
        let predicate = match pk {
            0 => Predicate::Any,
            1 => Predicate::Equals(labels[pl as usize]),
            _ => Predicate::not_equals([labels[pl as usize]]),
        };
        let sym = *syms[il as usize].symbol().unwrap();
        let instruction = match ik {
            0 => Instruction::Id,
            1 => Instruction::Push { branch, label: sym },
            2 => Instruction::Down,
            3 => Instruction::Set(sym),
            _ => Instruction::Up(branch),
        };
        b.transition(qs[from], read, predicate, instruction, qs[to]);
    }
    b.build().unwrap()
}

/// Push-down automaton over `a`, `b` with stack symbols `x`, `y`. Instruction
/// kinds 0..3 are id, push, pop.
fn pda(raw: &[Raw], finals: &[usize]) -> Automaton {
    let mut b = AutomatonBuilder::new(StorageKind::Pushdown);
    let qs: Vec<_> = (0..3).map(|i| b.state(&format!("q{i}"))).collect();
    for a in ["a", "b"] {
        b.letter(a);
    }
    let syms = [b.sym("x"), b.sym("y")];
    let labels = [Label::Root, syms[0], syms[1]];
    b.set_initial(qs[0]);
    for &f in finals {
        b.add_final(qs[f]);
    }
    for &(from, read, pk, pl, ik, _, il, to) in raw {
        let predicate = match pk {
            0 => Predicate::Any,
            1 => Predicate::Equals(labels[pl as usize]),
            _ => Predicate::not_equals([labels[pl as usize]]),
        };
        let sym = *syms[il as usize].symbol().unwrap();
        let instruction = match ik {
            0 => Instruction::Id,
            1 => Instruction::PdPush(sym),
            _ => Instruction::PdPop(sym),
        };
        b.transition(qs[from], read, predicate, instruction, qs[to]);
    }
    b.build().unwrap()
}

fn words(max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut last = vec![vec![]];
    for _ in 0..max_len {
        last = last
            .iter()
            .flat_map(|w: &Vec<usize>| (0..2).map(move |a| [w.clone(), vec![a]].concat()))
            .collect();
        out.extend(last.iter().cloned());
    }
    out
}

/// Verdicts agree wherever both searches decided.
fn agree(
    m1: &Automaton,
    s1: Strategy,
    m2: &Automaton,
    s2: Strategy,
    max_len: usize,
) -> Result<(), TestCaseError> {
    let b = budget(20_000);
    for w in words(max_len) {
        let v1 = search(m1, &w, &b, s1).verdict;
        let v2 = search(m2, &w, &b, s2).verdict;
        if v1 != Verdict::BudgetExhausted && v2 != Verdict::BudgetExhausted {
            prop_assert_eq!(v1, v2, "word {:?}", w);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witness_runs_are_sound(w in prop::collection::vec(0..2usize, 0..12)) {
        let m = z_word_problem_automaton();
        let run = find_accepting_run(&m, &w, &SearchBudget::default());
        prop_assert_eq!(run.is_some(), exponent_sum(&w) == 0);
        if let Some(run) = run {
            prop_assert!(run.validate(&m).is_ok());
            prop_assert_eq!(run.word_read(&m), w);
            prop_assert!(m.finals.contains(&run.last().state));
        }
    }

    #[test]
    fn verdicts_are_deterministic_and_budget_monotone(w in prop::collection::vec(0..4usize, 0..7), small in 1usize..400) {
        let m1 = z_word_problem_automaton_named("a", "A");
        let m2 = z_word_problem_automaton_named("b", "B");
        let m = free_product(&m1, &m2, 1).unwrap();
        let w: Vec<usize> = {
            let names = ["a", "A", "b", "B"];
            let named: Vec<&str> = w.iter().map(|&i| names[i]).collect();
            m.word(&named).unwrap()
        };
        let v = accepts(&m, &w, &budget(small));
        prop_assert_eq!(v, accepts(&m, &w, &budget(small)));
        let big = accepts(&m, &w, &SearchBudget::default());
        prop_assert_ne!(big, Verdict::BudgetExhausted);
        if v != Verdict::BudgetExhausted {
            prop_assert_eq!(v, big);
        }
    }

    #[test]
    fn summary_engine_matches_explicit(raw in raw_transitions(4), finals in prop::collection::vec(0..3usize, 1..3)) {
        let m = tree_automaton(&raw, &finals);
        agree(&m, Strategy::Summary, &m, Strategy::Explicit, 5)?;
    }

    #[test]
    fn summary_witnesses_replay(raw in raw_transitions(4), finals in prop::collection::vec(0..3usize, 1..3), w in prop::collection::vec(0..2usize, 0..5)) {
        let m = tree_automaton(&raw, &finals);
        if let Some(run) = search(&m, &w, &budget(20_000), Strategy::Summary).run {
            prop_assert!(run.validate(&m).is_ok());
            prop_assert_eq!(run.word_read(&m), w);
            prop_assert!(m.finals.contains(&run.last().state));
        }
    }

    #[test]
    fn normalization_preserves_language(raw in raw_transitions(5), finals in prop::collection::vec(0..3usize, 1..3)) {
        let m = tree_automaton(&raw, &finals);
        let n = normalize_root_acceptance(&m).unwrap();
        agree(&m, Strategy::Explicit, &n, Strategy::Explicit, 4)?;
    }

    #[test]
    fn pda_embedding_preserves_language(raw in raw_transitions(3), finals in prop::collection::vec(0..3usize, 1..3)) {
        let m = pda(&raw, &finals);
        let t = pda_to_tree_stack(&m).unwrap();
        agree(&m, Strategy::Explicit, &t, Strategy::Auto, 4)?;
    }

    #[test]
    fn saturation_matches_derivation_trees(seed in any::<u64>()) {
        let g = random_grammar(seed);
        prop_assert!(g.validate().is_empty(), "{:?}", g.validate());
        let cap = 6;
        let saturated = g.saturate(cap);
        let mut trees = Derivations { g: &g, cap, memo: HashMap::new() };
        let mut previous = BTreeSet::new();
        let mut stable = 0;
        for depth in 1..=16 {
            let found = trees.derive("S", depth);
            prop_assert!(found.is_subset(&saturated["S"]));
            stable = if found == previous { stable + 1 } else { 0 };
            previous = found;
            if stable == 3 {
                break;
            }
        }
        prop_assert_eq!(&previous, &saturated["S"]);
    }
}

/// Non-deleting grammar with `S` of dimension 1 and `A`, `B` of dimension 2
/// and 1. Every rewriting uses each variable exactly once.
fn random_grammar(seed: u64) -> Grammar {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = [("S", 1usize), ("A", 2), ("B", 1)];
    let dim = |n: &str| dims.iter().find(|d| d.0 == n).unwrap().1;
    let mut rules = Vec::new();
    for (lhs, d) in dims {
        for _ in 0..rng.gen_range(1..=3) {
            let rhs_len = if rules
                .iter()
                .any(|r: &Rule| r.lhs == lhs && r.rhs.is_empty())
            {
                rng.gen_range(0..=2)
            } else {
                0
            };
            let rhs: Vec<String> = (0..rhs_len)
                .map(|_| ["A", "B"][rng.gen_range(0..2)].to_string())
                .collect();
            let arity: usize = rhs.iter().map(|b| dim(b)).sum();
            let mut tokens: Vec<Token> = (0..arity).map(Token::Var).collect();
            for _ in 0..rng.gen_range(0..=2) {
                tokens.push(Token::Terminal(["a", "b"][rng.gen_range(0..2)].to_string()));
            }
            tokens.shuffle(&mut rng);
            let mut components = vec![Vec::new(); d];
            for t in tokens {
                components[rng.gen_range(0..d)].push(t);
            }
            rules.push(Rule {
                lhs: lhs.to_string(),
                rhs,
                rewriting: LinearRewriting::new(arity, components),
            });
        }
    }
    Grammar {
        terminals: vec!["a".into(), "b".into()],
        nonterminals: dims
            .iter()
            .map(|&(name, dimension)| Nonterminal {
                name: name.into(),
                dimension,
            })
            .collect(),
        start: "S".into(),
        rules,
    }
}

/// Tuples of derivation trees of bounded height, built top-down. Trees whose
/// tuple exceeds the cap are dropped, which loses nothing for non-deleting
/// grammars.
struct Derivations<'a> {
    g: &'a Grammar,
    cap: usize,
    memo: HashMap<(String, usize), BTreeSet<Tuple>>,
}

impl Derivations<'_> {
    fn derive(&mut self, a: &str, depth: usize) -> BTreeSet<Tuple> {
        if depth == 0 {
            return BTreeSet::new();
        }
        if let Some(s) = self.memo.get(&(a.to_string(), depth)) {
            return s.clone();
        }
        let mut out = BTreeSet::new();
        for r in self.g.rules.iter().filter(|r| r.lhs == a) {
            let children: Vec<BTreeSet<Tuple>> =
                r.rhs.iter().map(|b| self.derive(b, depth - 1)).collect();
            let mut partial: Vec<Vec<Vec<String>>> = vec![vec![]];
            for c in &children {
                partial = partial
                    .iter()
                    .flat_map(|p| c.iter().map(move |t| [p.clone(), t.clone()].concat()))
                    .collect();
            }
            for args in partial {
                let t = apply_rewriting(&r.rewriting, &args).unwrap();
                if t.iter().map(Vec::len).sum::<usize>() <= self.cap {
                    out.insert(t);
                }
            }
        }
        self.memo.insert((a.to_string(), depth), out.clone());
        out
    }
}
/// Pop back to the root, check it, push again.
#[test]
fn pda_embedding_push_after_pop_at_root() {
    let raw: Vec<Raw> = vec![
        (2, None, 1, 0, 0, 0, 0, 0),
        (1, None, 0, 0, 2, 0, 1, 2),
        (0, Some(0), 0, 0, 1, 0, 1, 1),
    ];
    let m = pda(&raw, &[0]);
    let t = pda_to_tree_stack(&m).unwrap();
    for w in [vec![0], vec![0, 0], vec![0, 0, 0]] {
        assert_eq!(accepts(&m, &w, &budget(20_000)), Verdict::Accepted);
        assert_eq!(accepts(&t, &w, &budget(20_000)), Verdict::Accepted, "{w:?}");
    }
}
