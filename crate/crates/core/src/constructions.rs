//! Word-problem automata for ℤ and finite groups, and the closure
//! constructions: free products, subgroup recognisers, amalgamated products
//! over finite subgroups, HNN extensions and graphs of groups.
//!
//! Every construction embeds root-normalised component automata as regions of
//! one tree-stack. A region hangs below a marker vertex that plays the role of
//! the component's root: `equals(◇)` tests become marker tests, and `down` or
//! `set` never fire on a marker, so a region cannot leave through its root
//! except by the construction's own exit rules. Re-entry pushes use negative
//! branches below every branch the components use.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::analysis::{
    check_cycle_free, is_root_normalized, normalize_root_acceptance, pda_to_tree_stack,
    trivial_to_tree_stack, uniform_visit_bound, AnalysisError,
};
use crate::automaton::{
    Automaton, AutomatonBuilder, AutomatonError, Instruction, LetterId, Predicate, StateId,
    StorageKind, StoreLabel, SymbolId,
};
use crate::oracle::{EdgeGroup, FiniteGroup, GraphSpec, GroupError, GroupSpec, Side};
use crate::tree_stack::{Branch, Label};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("alphabet-overlap: letter `{0}` belongs to both components")]
    AlphabetOverlap(String),
    #[error("not-cycle-free: {0}")]
    NotCycleFree(String),
    #[error("bad-subgroup-data: {0}")]
    BadSubgroupData(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// The word problem of ℤ over the letters `up` and `down`.
///
/// An unmatched letter is stored on branch 1 of a fresh vertex pushed on
/// branch 0 of a `□` vertex, so every spine vertex keeps a free branch 1 for
/// the next unmatched letter of the same sign after cancellations.
pub fn z_word_problem_automaton_named(up: &str, down: &str) -> Automaton {
    let mut b = AutomatonBuilder::new(StorageKind::TreeStack);
    let s = b.state("S");
    let p_up = b.state(&format!("P_{up}"));
    let p_down = b.state(&format!("P_{down}"));
    let qf = b.state("q_f");
    let u = b.letter(up);
    let d = b.letter(down);
    let su = b.symbol(up);
    let sd = b.symbol(down);
    let boxed = b.symbol("□");
    b.set_initial(s).add_final(qf);
    for (letter, own, other, pending) in [(u, su, sd, p_up), (d, sd, su, p_down)] {
        b.transition(
            s,
            Some(letter),
            Predicate::not_equals([Label::Sym(other)]),
            Instruction::Push {
                branch: 0,
                label: boxed,
            },
            pending,
        );
        b.transition(
            pending,
            None,
            Predicate::Any,
            Instruction::Push {
                branch: 1,
                label: own,
            },
            s,
        );
        b.transition(
            s,
            Some(letter),
            Predicate::Equals(Label::Sym(other)),
            Instruction::Down,
            s,
        );
    }
    b.transition(
        s,
        None,
        Predicate::Equals(Label::Sym(boxed)),
        Instruction::Down,
        s,
    );
    b.transition(s, None, Predicate::Equals(Label::Root), Instruction::Id, qf);
    b.build().expect("ℤ automaton is well formed")
}

pub fn z_word_problem_automaton() -> Automaton {
    z_word_problem_automaton_named("t", "T")
}

/// Trivial-storage automaton on the elements of a finite group.
pub fn finite_group_automaton(group: &FiniteGroup, generators: &[(String, usize)]) -> Automaton {
    let mut b = AutomatonBuilder::new(StorageKind::Trivial);
    let states: Vec<StateId> = group.elements.iter().map(|e| b.state(e)).collect();
    let letters: Vec<LetterId> = generators.iter().map(|(a, _)| b.letter(a)).collect();
    b.set_initial(states[group.identity()])
        .add_final(states[group.identity()]);
    for g in 0..group.order() {
        for (i, (_, x)) in generators.iter().enumerate() {
            b.transition(
                states[g],
                Some(letters[i]),
                Predicate::Any,
                Instruction::Id,
                states[group.mul(g, *x)],
            );
        }
    }
    b.build().expect("group automaton is well formed")
}

/// Brings an automaton into the shape the constructions expect: tree-stack
/// storage, acceptance at the root through a single final state, cycle-free.
pub fn prepare(m: &Automaton) -> Result<Automaton, ConstructionError> {
    let tree = match m.storage {
        StorageKind::Trivial => trivial_to_tree_stack(m)?,
        StorageKind::Pushdown => pda_to_tree_stack(m)?,
        StorageKind::TreeStack => m.clone(),
    };
    let normal = if is_root_normalized(&tree) {
        tree
    } else {
        normalize_root_acceptance(&tree)?
    };
    if let Some(w) = check_cycle_free(&normal) {
        return Err(ConstructionError::NotCycleFree(w.describe(&normal)));
    }
    Ok(normal)
}

fn final_state(m: &Automaton) -> StateId {
    *m.finals
        .iter()
        .next()
        .expect("root-normalised automata have one final state")
}

fn min_branch(m: &Automaton) -> Branch {
    m.transitions
        .iter()
        .filter_map(|t| match t.instruction {
            Instruction::Push { branch, .. } | Instruction::Up(branch) => Some(branch),
            _ => None,
        })
        .min()
        .unwrap_or(0)
}

/// `n` fresh negative branches below everything the components use.
fn reentry_branches(components: &[&Automaton], k: usize) -> Result<Vec<Branch>, ConstructionError> {
    let mut n = 1;
    let mut floor = 0;
    for m in components {
        n = n.max(uniform_visit_bound(m, k)?);
        floor = floor.min(min_branch(m));
    }
    Ok((1..=n as Branch).map(|i| floor - i).collect())
}

fn check_disjoint(a: &Automaton, b: &Automaton) -> Result<(), ConstructionError> {
    let left: BTreeSet<&String> = a.alphabet.iter().collect();
    match b.alphabet.iter().find(|x| left.contains(x)) {
        Some(x) => Err(ConstructionError::AlphabetOverlap(x.clone())),
        None => Ok(()),
    }
}

/// Suffix-closed set of pending words, `ε` first.
fn suffixes(words: &[Vec<LetterId>]) -> Vec<Vec<LetterId>> {
    let mut set = BTreeSet::new();
    set.insert(Vec::new());
    for w in words {
        for i in 0..w.len() {
            set.insert(w[i..].to_vec());
        }
    }
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort_by_key(|w| w.len());
    v
}

/// A component copied into a construction under a name prefix.
struct Region {
    states: HashMap<(StateId, Vec<LetterId>), StateId>,
    initial: StateId,
    last: StateId,
}

impl Region {
    fn at(&self, q: StateId, pending: &[LetterId]) -> StateId {
        self.states[&(q, pending.to_vec())]
    }
}

fn state_name(prefix: &str, q: &str, pending: &[LetterId], alphabet: &[String]) -> String {
    if pending.is_empty() {
        format!("{prefix}{q}")
    } else {
        let v: Vec<&str> = pending.iter().map(|&a| alphabet[a].as_str()).collect();
        format!("{prefix}{q}[{}]", v.join(","))
    }
}

/// Rewrites a component predicate for a region rooted at one of `markers`.
/// With `markers` absent the root stays the root.
fn translate_predicate(
    p: &Predicate,
    instruction: &Instruction,
    markers: Option<&[StoreLabel]>,
    sym: &dyn Fn(StoreLabel) -> StoreLabel,
) -> Vec<Predicate> {
    let Some(markers) = markers else {
        return vec![match p {
            Predicate::Any => Predicate::Any,
            Predicate::Equals(l) => Predicate::Equals(sym(*l)),
            Predicate::NotEquals(set) => {
                Predicate::NotEquals(set.iter().map(|l| sym(*l)).collect())
            }
        }];
    };
    let guarded = matches!(instruction, Instruction::Down | Instruction::Set(_));
    match p {
        Predicate::Any if guarded => vec![Predicate::not_equals(markers.iter().copied())],
        Predicate::Any => vec![Predicate::Any],
        Predicate::Equals(Label::Root) if guarded => Vec::new(),
        Predicate::Equals(Label::Root) => markers.iter().map(|m| Predicate::Equals(*m)).collect(),
        Predicate::Equals(l) => vec![Predicate::Equals(sym(*l))],
        Predicate::NotEquals(set) => {
            let mut out: BTreeSet<StoreLabel> = set
                .iter()
                .filter(|l| !l.is_root())
                .map(|l| sym(*l))
                .collect();
            if guarded || set.contains(&Label::Root) {
                out.extend(markers.iter().copied());
            }
            vec![Predicate::NotEquals(out)]
        }
    }
}

/// Copies the transitions of `m` into `b` for every pending word in
/// `pending`. A letter rule either reads its letter (no pending word) or
/// consumes it from the head of the pending word.
fn embed(
    b: &mut AutomatonBuilder,
    m: &Automaton,
    prefix: &str,
    pending: &[Vec<LetterId>],
    markers: Option<&[StoreLabel]>,
) -> Region {
    let mut states = HashMap::new();
    for q in 0..m.states.len() {
        for v in pending {
            let id = b.state(&state_name(prefix, &m.states[q], v, &m.alphabet));
            states.insert((q, v.clone()), id);
        }
    }
    let letters: Vec<LetterId> = m.alphabet.iter().map(|a| b.letter(a)).collect();
    let symbols: Vec<SymbolId> = m
        .symbols
        .iter()
        .map(|s| b.symbol(&format!("{prefix}{s}")))
        .collect();
    let sym = |l: StoreLabel| match l {
        Label::Root => Label::Root,
        Label::Sym(s) => Label::Sym(symbols[s as usize]),
    };
    for t in &m.transitions {
        let instruction = match t.instruction {
            Instruction::Push { branch, label } => Instruction::Push {
                branch,
                label: symbols[label as usize],
            },
            Instruction::Set(label) => Instruction::Set(symbols[label as usize]),
            other => other,
        };
        let predicates = translate_predicate(&t.predicate, &t.instruction, markers, &sym);
        for v in pending {
            let (read, rest): (Option<LetterId>, &[LetterId]) = match t.read {
                None => (None, v),
                Some(a) if v.is_empty() => (Some(letters[a]), v),
                Some(a) if v[0] == a => (None, &v[1..]),
                Some(_) => continue,
            };
            let from = states[&(t.from, v.clone())];
            let to = states[&(t.to, rest.to_vec())];
            for p in &predicates {
                b.transition(from, read, p.clone(), instruction, to);
            }
        }
    }
    Region {
        initial: states[&(m.initial, Vec::new())],
        last: states[&(final_state(m), Vec::new())],
        states,
    }
}

fn symbol_label(b: &mut AutomatonBuilder, name: &str) -> (SymbolId, StoreLabel) {
    let id = b.symbol(name);
    (id, Label::Sym(id))
}

/// Word problem of `G₁ ∗ G₂` from word-problem automata of the factors.
pub fn free_product(
    m1: &Automaton,
    m2: &Automaton,
    k: usize,
) -> Result<Automaton, ConstructionError> {
    check_disjoint(m1, m2)?;
    let m1 = prepare(m1)?;
    let m2 = prepare(m2)?;
    let branches = reentry_branches(&[&m1, &m2], k)?;
    let comps = [&m1, &m2];
    let prefixes = ["1.", "2."];

    let mut b = AutomatonBuilder::new(StorageKind::TreeStack);
    let s = b.state("S");
    let f = b.state("F");
    // (q, □_i): root of a region of component i entered from q
    let mut markers: [Vec<(String, SymbolId)>; 2] = [Vec::new(), Vec::new()];
    for (i, slot) in markers.iter_mut().enumerate() {
        let j = 1 - i;
        let mut hosts = vec!["S".to_string()];
        hosts.extend(
            comps[j]
                .states
                .iter()
                .map(|q| format!("{}{q}", prefixes[j])),
        );
        for host in hosts {
            let (id, _) = symbol_label(&mut b, &format!("({host},□{})", i + 1));
            slot.push((host, id));
        }
    }
    let labels: Vec<Vec<StoreLabel>> = markers
        .iter()
        .map(|ms| ms.iter().map(|(_, id)| Label::Sym(*id)).collect())
        .collect();
    let regions: Vec<Region> = (0..2)
        .map(|i| {
            embed(
                &mut b,
                comps[i],
                prefixes[i],
                &[Vec::new()],
                Some(&labels[i]),
            )
        })
        .collect();

    b.set_initial(s).add_final(f);
    b.transition(s, None, Predicate::Equals(Label::Root), Instruction::Id, f);
    for i in 0..2 {
        let entry = markers[i][0].1;
        b.transition(
            s,
            None,
            Predicate::Any,
            Instruction::Push {
                branch: i as Branch + 1,
                label: entry,
            },
            regions[i].initial,
        );
        b.transition(
            regions[i].last,
            None,
            Predicate::Equals(Label::Sym(entry)),
            Instruction::Down,
            s,
        );
    }
    for i in 0..2 {
        let j = 1 - i;
        // from any state q of component j into component i, and back to q;
        // the pointer of a j-region never carries an i-marker
        for q in 0..comps[j].states.len() {
            let host = regions[j].at(q, &[]);
            let marker = markers[i][q + 1].1;
            for &n in &branches {
                b.transition(
                    host,
                    None,
                    Predicate::not_equals(labels[i].iter().copied()),
                    Instruction::Push {
                        branch: n,
                        label: marker,
                    },
                    regions[i].initial,
                );
            }
            b.transition(
                regions[i].last,
                None,
                Predicate::Equals(Label::Sym(marker)),
                Instruction::Down,
                host,
            );
        }
    }
    Ok(b.build()?)
}

/// Accepts `{w : vw ∈ L(M) for some v ∈ R}`.
pub fn subset_recognizer(m: &Automaton, r: &[Vec<String>]) -> Result<Automaton, ConstructionError> {
    let m = prepare(m)?;
    let words: Vec<Vec<LetterId>> = r
        .iter()
        .map(|w| {
            w.iter()
                .map(|a| {
                    m.letter_id(a).ok_or_else(|| {
                        ConstructionError::BadSubgroupData(format!("unknown letter `{a}`"))
                    })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let pending = suffixes(&words);
    let mut b = AutomatonBuilder::new(StorageKind::TreeStack);
    let s = b.state("S");
    let region = embed(&mut b, &m, "1.", &pending, None);
    b.set_initial(s).add_final(region.last);
    for v in &words {
        b.transition(
            s,
            None,
            Predicate::Equals(Label::Root),
            Instruction::Id,
            region.at(m.initial, v),
        );
    }
    Ok(b.build()?)
}

fn reps_over(
    m: &Automaton,
    edge: &EdgeGroup,
    side: Side,
) -> Result<Vec<Vec<LetterId>>, ConstructionError> {
    edge.reps(side)
        .iter()
        .map(|w| {
            w.iter()
                .map(|a| {
                    m.letter_id(a).ok_or_else(|| {
                        ConstructionError::BadSubgroupData(format!(
                            "representative letter `{a}` is not a generator"
                        ))
                    })
                })
                .collect()
        })
        .collect()
}

fn check_edge_shape(edge: &EdgeGroup) -> Result<(), ConstructionError> {
    let n = edge.group.order();
    if edge.source_reps.len() != n || edge.target_reps.len() != n {
        return Err(ConstructionError::BadSubgroupData(format!(
            "expected {n} representative words on each side"
        )));
    }
    Ok(())
}

/// Word problem of `G₁ ∗_H G₂`. Source reps of `edge` are words over `m1`,
/// target reps words over `m2`.
pub fn amalgamated_product(
    m1: &Automaton,
    m2: &Automaton,
    edge: &EdgeGroup,
    k: usize,
) -> Result<Automaton, ConstructionError> {
    check_disjoint(m1, m2)?;
    check_edge_shape(edge)?;
    let m1 = prepare(m1)?;
    let m2 = prepare(m2)?;
    let comps = [&m1, &m2];
    let prefixes = ["1.", "2."];
    let reps = [
        reps_over(&m1, edge, Side::Source)?,
        reps_over(&m2, edge, Side::Target)?,
    ];
    let branches = reentry_branches(&[&m1, &m2], k)?;
    let h = &edge.group;

    let mut b = AutomatonBuilder::new(StorageKind::TreeStack);
    let s = b.state("S");
    let f = b.state("F");
    // boxes[i]: bottom marker of component i; entered[i][q][h]: marker of a
    // region of component i entered from state q of the other component
    let mut boxes = Vec::new();
    let mut entered: Vec<Vec<Vec<SymbolId>>> = Vec::new();
    for i in 0..2 {
        let j = 1 - i;
        boxes.push(b.symbol(&format!("□{}", i + 1)));
        let per_state = comps[j]
            .states
            .iter()
            .map(|q| {
                (0..h.order())
                    .map(|x| b.symbol(&format!("⟨{}{q}|{}⟩", prefixes[j], h.elements[x])))
                    .collect()
            })
            .collect();
        entered.push(per_state);
    }
    let labels: Vec<Vec<StoreLabel>> = (0..2)
        .map(|i| {
            let mut v = vec![Label::Sym(boxes[i])];
            v.extend(entered[i].iter().flatten().map(|&x| Label::Sym(x)));
            v
        })
        .collect();
    let regions: Vec<Region> = (0..2)
        .map(|i| {
            embed(
                &mut b,
                comps[i],
                prefixes[i],
                &suffixes(&reps[i]),
                Some(&labels[i]),
            )
        })
        .collect();

    b.set_initial(s).add_final(f);
    b.transition(s, None, Predicate::Equals(Label::Root), Instruction::Id, f);
    for i in 0..2 {
        b.transition(
            s,
            None,
            Predicate::Any,
            Instruction::Push {
                branch: 1,
                label: boxes[i],
            },
            regions[i].initial,
        );
        b.transition(
            regions[i].last,
            None,
            Predicate::Equals(Label::Sym(boxes[i])),
            Instruction::Down,
            s,
        );
    }
    for i in 0..2 {
        let j = 1 - i;
        // from (q, ε) of component j: guess x ∈ H, let component i check the
        // next factor equals x, then replay x's word on side j
        for (q, entered_q) in entered[i].iter().enumerate().take(comps[j].states.len()) {
            let host = regions[j].at(q, &[]);
            for x in 0..h.order() {
                let marker = entered_q[x];
                let inner = regions[i].at(comps[i].initial, &reps[i][h.inverse(x)]);
                for &n in &branches {
                    b.transition(
                        host,
                        None,
                        Predicate::Any,
                        Instruction::Push {
                            branch: n,
                            label: marker,
                        },
                        inner,
                    );
                }
                let resume = regions[j].at(q, &reps[j][x]);
                b.transition(
                    regions[i].last,
                    None,
                    Predicate::Equals(Label::Sym(marker)),
                    Instruction::Down,
                    resume,
                );
            }
        }
    }
    Ok(b.build()?)
}

/// Word problem of the HNN extension `⟨G, t | t·src(h)·t⁻¹ = tgt(h)⟩`.
/// Both rep lists of `edge` are words over `m`.
pub fn hnn_extension(
    m: &Automaton,
    edge: &EdgeGroup,
    t_name: &str,
    t_inv_name: &str,
    k: usize,
) -> Result<Automaton, ConstructionError> {
    check_edge_shape(edge)?;
    for name in [t_name, t_inv_name] {
        if m.letter_id(name).is_some() {
            return Err(ConstructionError::AlphabetOverlap(name.to_string()));
        }
    }
    if t_name == t_inv_name {
        return Err(ConstructionError::AlphabetOverlap(t_name.to_string()));
    }
    let m = prepare(m)?;
    let src = reps_over(&m, edge, Side::Source)?;
    let tgt = reps_over(&m, edge, Side::Target)?;
    let branches = reentry_branches(&[&m], k)?;
    let h = &edge.group;
    let prefix = "1.";

    let mut b = AutomatonBuilder::new(StorageKind::TreeStack);
    let s = b.state("S");
    let f = b.state("F");
    let t = b.letter(t_name);
    let t_inv = b.letter(t_inv_name);
    let boxed = b.symbol("□");
    // markers[dir][q][x]: region opened by t (dir 0) or t⁻¹ (dir 1) from q with guess x
    let mut markers: Vec<Vec<Vec<SymbolId>>> = Vec::new();
    for letter in [t_name, t_inv_name] {
        markers.push(
            m.states
                .iter()
                .map(|q| {
                    (0..h.order())
                        .map(|x| b.symbol(&format!("⟨{prefix}{q}|{letter}|{}⟩", h.elements[x])))
                        .collect()
                })
                .collect(),
        );
    }
    let mut labels = vec![Label::Sym(boxed)];
    labels.extend(markers.iter().flatten().flatten().map(|&x| Label::Sym(x)));
    let mut all_reps = src.clone();
    all_reps.extend(tgt.iter().cloned());
    let region = embed(&mut b, &m, prefix, &suffixes(&all_reps), Some(&labels));

    b.set_initial(s).add_final(f);
    b.transition(s, None, Predicate::Equals(Label::Root), Instruction::Id, f);
    b.transition(
        s,
        None,
        Predicate::Any,
        Instruction::Push {
            branch: 1,
            label: boxed,
        },
        region.initial,
    );
    b.transition(
        region.last,
        None,
        Predicate::Equals(Label::Sym(boxed)),
        Instruction::Down,
        s,
    );
    // t g t⁻¹ with g = src(x) becomes tgt(x); t⁻¹ g t with g = tgt(x) becomes src(x)
    let plans = [(t, t_inv, &src, &tgt), (t_inv, t, &tgt, &src)];
    for (dir, (open, close, inside, outside)) in plans.into_iter().enumerate() {
        for (q, markers_q) in markers[dir].iter().enumerate().take(m.states.len()) {
            let host = region.at(q, &[]);
            for x in 0..h.order() {
                let marker = markers_q[x];
                let inner = region.at(m.initial, &inside[h.inverse(x)]);
                for &n in &branches {
                    b.transition(
                        host,
                        Some(open),
                        Predicate::Any,
                        Instruction::Push {
                            branch: n,
                            label: marker,
                        },
                        inner,
                    );
                }
                b.transition(
                    region.last,
                    Some(close),
                    Predicate::Equals(Label::Sym(marker)),
                    Instruction::Down,
                    region.at(q, &outside[x]),
                );
            }
        }
    }
    Ok(b.build()?)
}

/// Word-problem automaton of a group spec, built bottom-up.
pub fn automaton_for(spec: &GroupSpec, k: usize) -> Result<Automaton, ConstructionError> {
    spec.validate()?;
    build(spec, k)
}

fn build(spec: &GroupSpec, k: usize) -> Result<Automaton, ConstructionError> {
    match spec {
        GroupSpec::Finite { group, generators } => {
            prepare(&finite_group_automaton(group, generators))
        }
        GroupSpec::Integers { up, down } => Ok(z_word_problem_automaton_named(up, down)),
        GroupSpec::FreeProduct(l, r) => free_product(&build(l, k)?, &build(r, k)?, k),
        GroupSpec::Amalgam(l, r, edge) => {
            amalgamated_product(&build(l, k)?, &build(r, k)?, edge, k)
        }
        GroupSpec::Hnn {
            base,
            edge,
            t,
            t_inv,
        } => hnn_extension(&build(base, k)?, edge, t, t_inv, k),
        GroupSpec::Graph(g) => graph_of_groups(g, k),
    }
}

/// Folds amalgams over the tree edges and HNN extensions over the rest.
pub fn graph_of_groups(spec: &GraphSpec, k: usize) -> Result<Automaton, ConstructionError> {
    let folded = GroupSpec::Graph(spec.clone()).fold_graph()?;
    build(&folded, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{accepts, SearchBudget, Verdict};

    fn check(m: &Automaton, word: &str, expected: bool) {
        let w = m.parse_word(word, None).unwrap();
        let v = accepts(m, &w, &SearchBudget::default());
        assert_eq!(
            v,
            if expected {
                Verdict::Accepted
            } else {
                Verdict::Rejected
            },
            "word {word:?}"
        );
    }

    #[test]
    fn z_automaton_examples() {
        let m = z_word_problem_automaton();
        for (w, e) in [
            ("tT", true),
            ("ttTT", true),
            ("tTtT", true),
            ("TtTt", true),
            ("ttT", false),
            ("", true),
        ] {
            check(&m, w, e);
        }
        assert!(check_cycle_free(&m).is_none());
        assert!(!m.has_up());
    }

    #[test]
    fn finite_group_examples() {
        let z2 = finite_group_automaton(&FiniteGroup::cyclic(2, "a"), &[("a".into(), 1)]);
        let z4 = finite_group_automaton(&FiniteGroup::cyclic(4, "a"), &[("a".into(), 1)]);
        assert!(matches!(
            crate::search::accepts(&z2, &[], &SearchBudget::default()),
            Verdict::Accepted
        ));
        check(&z2, "aa", true);
        check(&z2, "a", false);
        check(&z4, "aaaa", true);
        check(&z4, "aa", false);
        let prepared = prepare(&z4).unwrap();
        check(&prepared, "aaaa", true);
        check(&prepared, "aaa", false);
        check(&prepared, "", true);
    }

    #[test]
    fn free_product_examples() {
        let m = free_product(
            &z_word_problem_automaton_named("a", "A"),
            &z_word_problem_automaton_named("b", "B"),
            1,
        )
        .unwrap();
        check(&m, "aAbB", true);
        check(&m, "abAB", false);
        check(&m, "", true);
        check(&m, "ab", false);
        check(&m, "abBA", true);
        check(&m, "aAbBaA", true);
    }

    #[test]
    fn overlapping_alphabets() {
        let z = z_word_problem_automaton();
        assert!(matches!(
            free_product(&z, &z, 1),
            Err(ConstructionError::AlphabetOverlap(_))
        ));
    }

    #[test]
    fn subset_recognizer_examples() {
        let z = z_word_problem_automaton();
        let m = subset_recognizer(&z, &[vec!["T".into()]]).unwrap();
        check(&m, "t", true);
        check(&m, "tt", false);
        check(&m, "Ttt", true);
        check(&m, "", false);
        let both = subset_recognizer(&z, &[vec!["T".into()], vec![]]).unwrap();
        check(&both, "tT", true);
        check(&both, "ttT", true);
        check(&both, "ttt", false);
    }

    fn z4_amalgam() -> Automaton {
        let spec = GroupSpec::amalgam(
            GroupSpec::cyclic(4, "a"),
            GroupSpec::cyclic(4, "b"),
            EdgeGroup {
                group: FiniteGroup::cyclic(2, "h"),
                source_reps: vec![vec![], vec!["a".into(), "a".into()]],
                target_reps: vec![vec![], vec!["b".into(), "b".into()]],
            },
        );
        automaton_for(&spec, 1).unwrap()
    }

    #[test]
    fn amalgam_examples() {
        let m = z4_amalgam();
        check(&m, "aabb", true);
        check(&m, "ab", false);
        check(&m, "", true);
        check(&m, "abab", false);
        check(&m, "abaabbba", true);
        check(&m, "abaabbbab", false);
    }

    #[test]
    fn hnn_examples() {
        let id = EdgeGroup {
            group: FiniteGroup::cyclic(2, "h"),
            source_reps: vec![vec![], vec!["a".into()]],
            target_reps: vec![vec![], vec!["a".into()]],
        };
        let m = automaton_for(&GroupSpec::hnn(GroupSpec::cyclic(2, "a"), id, "t", "T"), 1).unwrap();
        check(&m, "taTa", true);
        check(&m, "ta", false);
        check(&m, "tT", true);
        check(&m, "", true);
        let free = automaton_for(
            &GroupSpec::hnn(GroupSpec::cyclic(2, "a"), EdgeGroup::trivial(), "t", "T"),
            1,
        )
        .unwrap();
        check(&free, "aa", true);
        check(&free, "tat", false);
        check(&free, "taTa", false);
    }
}
