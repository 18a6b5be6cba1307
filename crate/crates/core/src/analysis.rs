//! Static checks and normalisations on automata with storage.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::automaton::{
    Automaton, AutomatonBuilder, AutomatonError, Instruction, Predicate, StateId, StorageKind,
    StoreLabel, SymbolId,
};
use crate::search::Run;
use crate::tree_stack::{Label, TreeAddress};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("not-cycle-free: {0}")]
    NotCycleFree(String),
    #[error("expected {expected} storage, found {found}")]
    WrongStorage {
        expected: &'static str,
        found: &'static str,
    },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Result of [`check_k_restricted`]: entries into each vertex from its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionReport {
    pub k: usize,
    pub entries: BTreeMap<TreeAddress, usize>,
}

impl RestrictionReport {
    pub fn holds(&self) -> bool {
        self.entries.values().all(|&n| n <= self.k)
    }

    pub fn max_entries(&self) -> usize {
        self.entries.values().copied().max().unwrap_or(0)
    }

    pub fn violations(&self) -> Vec<(TreeAddress, usize)> {
        self.entries
            .iter()
            .filter(|(_, &n)| n > self.k)
            .map(|(a, &n)| (a.clone(), n))
            .collect()
    }
}

/// Counts, for every vertex `pn`, the steps of `run` that move the pointer
/// from `p` to `pn` (push or up).
pub fn check_k_restricted(run: &Run, k: usize) -> RestrictionReport {
    let mut entries = BTreeMap::new();
    for pair in run.configurations.windows(2) {
        if let (Some(a), Some(b)) = (pair[0].storage.pointer(), pair[1].storage.pointer()) {
            if b.parent().as_ref() == Some(a) {
                *entries.entry(b.clone()).or_insert(0) += 1;
            }
        }
    }
    RestrictionReport { k, entries }
}

/// A loop of id/set transitions, given as transition indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub transitions: Vec<usize>,
}

impl CycleWitness {
    pub fn describe(&self, m: &Automaton) -> String {
        self.transitions
            .iter()
            .map(|&t| m.describe_transition(&m.transitions[t]))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn stationary_edges(m: &Automaton) -> Vec<Vec<(usize, StateId)>> {
    let mut adj = vec![Vec::new(); m.states.len()];
    for (i, t) in m.transitions.iter().enumerate() {
        if t.instruction.is_stationary() {
            adj[t.from].push((i, t.to));
        }
    }
    adj
}

/// Returns a witness loop if the subgraph of id/set transitions has a cycle.
pub fn check_cycle_free(m: &Automaton) -> Option<CycleWitness> {
    let adj = stationary_edges(m);
    // 0 unvisited, 1 on stack, 2 done
    let mut colour = vec![0u8; m.states.len()];
    let mut via: Vec<Option<(usize, StateId)>> = vec![None; m.states.len()];
    for start in 0..m.states.len() {
        if colour[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        colour[start] = 1;
        while let Some(&mut (q, ref mut next)) = stack.last_mut() {
            if *next < adj[q].len() {
                let (t, r) = adj[q][*next];
                *next += 1;
                match colour[r] {
                    0 => {
                        colour[r] = 1;
                        via[r] = Some((t, q));
                        stack.push((r, 0));
                    }
                    1 => {
                        let mut loop_ts = vec![t];
                        let mut cur = q;
                        while cur != r {
                            let (pt, prev) = via[cur].expect("on the DFS stack");
                            loop_ts.push(pt);
                            cur = prev;
                        }
                        loop_ts.reverse();
                        return Some(CycleWitness {
                            transitions: loop_ts,
                        });
                    }
                    _ => {}
                }
            } else {
                colour[q] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Longest path, in edges, of the acyclic id/set subgraph.
fn longest_stationary_path(m: &Automaton) -> usize {
    let adj = stationary_edges(m);
    let mut memo: Vec<Option<usize>> = vec![None; m.states.len()];
    fn depth(q: StateId, adj: &[Vec<(usize, StateId)>], memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(d) = memo[q] {
            return d;
        }
        let d = adj[q]
            .iter()
            .map(|&(_, r)| 1 + depth(r, adj, memo))
            .max()
            .unwrap_or(0);
        memo[q] = Some(d);
        d
    }
    (0..m.states.len())
        .map(|q| depth(q, &adj, &mut memo))
        .max()
        .unwrap_or(0)
}

/// `k × (#push transitions) × (1 + longest id/set path)`.
pub fn uniform_visit_bound(m: &Automaton, k: usize) -> Result<usize, AnalysisError> {
    if let Some(w) = check_cycle_free(m) {
        return Err(AnalysisError::NotCycleFree(w.describe(m)));
    }
    Ok(k * m.push_count() * (1 + longest_stationary_path(m)))
}

fn require(m: &Automaton, kind: StorageKind) -> Result<(), AnalysisError> {
    if m.storage != kind {
        return Err(AnalysisError::WrongStorage {
            expected: kind.name(),
            found: m.storage.name(),
        });
    }
    Ok(())
}

/// Copies states, letters, symbols and transitions of `m` into a new builder.
pub(crate) fn copy_into(m: &Automaton, storage: StorageKind) -> AutomatonBuilder {
    let mut b = AutomatonBuilder::new(storage);
    for q in &m.states {
        b.state(q);
    }
    for a in &m.alphabet {
        b.letter(a);
    }
    for s in &m.symbols {
        b.symbol(s);
    }
    b.set_initial(m.initial);
    b
}

/// Picks a state name not used by `b`.
pub(crate) fn fresh_state(b: &mut AutomatonBuilder, base: &str) -> StateId {
    let mut name = base.to_string();
    while b.has_state(&name) {
        name.push('\'');
    }
    b.state(&name)
}

pub(crate) fn fresh_symbol(b: &mut AutomatonBuilder, base: &str) -> StoreLabel {
    let mut name = base.to_string();
    while b.has_symbol(&name) {
        name.push('\'');
    }
    b.sym(&name)
}

/// Adds `q_f`, `q̄_f` so that acceptance happens only with the pointer at the
/// root, through a single final state.
pub fn normalize_root_acceptance(m: &Automaton) -> Result<Automaton, AnalysisError> {
    require(m, StorageKind::TreeStack)?;
    let mut b = copy_into(m, StorageKind::TreeStack);
    for t in &m.transitions {
        b.transition(t.from, t.read, t.predicate.clone(), t.instruction, t.to);
    }
    let qf = fresh_state(&mut b, "q_f");
    let qbar = fresh_state(&mut b, "q̄_f");
    for &q in &m.finals {
        b.transition(q, None, Predicate::Any, Instruction::Id, qf);
    }
    b.transition(qf, None, Predicate::Any, Instruction::Down, qf);
    b.transition(
        qf,
        None,
        Predicate::Equals(Label::Root),
        Instruction::Id,
        qbar,
    );
    b.add_final(qbar);
    Ok(b.build()?)
}

/// Whether `m` already has the shape produced by [`normalize_root_acceptance`]:
/// one final state, entered only under `equals(◇)`.
pub fn is_root_normalized(m: &Automaton) -> bool {
    m.finals.len() == 1
        && m.transitions
            .iter()
            .filter(|t| m.finals.contains(&t.to))
            .all(|t| {
                t.predicate == Predicate::Equals(Label::Root) && t.instruction == Instruction::Id
            })
        && m.transitions.iter().all(|t| !m.finals.contains(&t.from))
        && !m.finals.contains(&m.initial)
}

/// Embeds a push-down automaton into tree-stack storage: `pd_push(ω)` becomes
/// `push₀(★λ)` followed by `push₁(ω)`, where λ is the top being covered,
/// `pd_pop(ω)` becomes `down` under `equals(ω)`, and `(q, ε, equals(★λ), down, q)`
/// skips spent vertices. A vertex labelled `★λ` reads as top λ, so a push after
/// a pop starts from the spent vertex, whose branch 0 is still free.
pub fn pda_to_tree_stack(m: &Automaton) -> Result<Automaton, AnalysisError> {
    require(m, StorageKind::Pushdown)?;
    let mut b = copy_into(m, StorageKind::TreeStack);
    // tops[i] is a stack top; stars[i] marks a spent vertex above that top
    let mut tops = vec![Label::Root];
    tops.extend((0..m.symbols.len()).map(|s| Label::Sym(s as SymbolId)));
    let stars: Vec<StoreLabel> = tops
        .iter()
        .map(|&l| fresh_symbol(&mut b, &format!("★{}", m.label_name(&l))))
        .collect();
    let star_id = |i: usize| *stars[i].symbol().expect("symbol");
    // labels whose real top satisfies p
    let holding =
        |p: &Predicate| -> Vec<usize> { (0..tops.len()).filter(|&i| p.holds(&tops[i])).collect() };
    for t in &m.transitions {
        match t.instruction {
            Instruction::PdPush(omega) => {
                let mid = b.state(&format!(
                    "(□_{},{})",
                    m.symbols[omega as usize], m.states[t.to]
                ));
                for i in holding(&t.predicate) {
                    for l in [tops[i], stars[i]] {
                        b.transition(
                            t.from,
                            t.read,
                            Predicate::Equals(l),
                            Instruction::Push {
                                branch: 0,
                                label: star_id(i),
                            },
                            mid,
                        );
                    }
                }
                b.transition(
                    mid,
                    None,
                    Predicate::Any,
                    Instruction::Push {
                        branch: 1,
                        label: omega,
                    },
                    t.to,
                );
            }
            Instruction::PdPop(omega) => {
                if t.predicate.holds(&Label::Sym(omega)) {
                    b.transition(
                        t.from,
                        t.read,
                        Predicate::Equals(Label::Sym(omega)),
                        Instruction::Down,
                        t.to,
                    );
                }
            }
            Instruction::Id => {
                let predicate = match &t.predicate {
                    Predicate::Any => Predicate::Any,
                    p => {
                        let held = holding(p);
                        Predicate::not_equals(
                            (0..tops.len())
                                .filter(|i| !held.contains(i))
                                .flat_map(|i| [tops[i], stars[i]]),
                        )
                    }
                };
                b.transition(t.from, t.read, predicate, Instruction::Id, t.to);
            }
            other => unreachable!("validated push-down instruction, got {other:?}"),
        }
    }
    for q in 0..m.states.len() {
        for &star in &stars {
            b.transition(q, None, Predicate::Equals(star), Instruction::Down, q);
        }
    }
    for &q in &m.finals {
        b.add_final(q);
    }
    Ok(b.build()?)
}

/// Turns a trivial-storage automaton into a cycle-free tree-stack one: every
/// move pushes a `□` on branch 0, and `(q, ε, equals(□), down, q)`
/// returns to the root before acceptance.
pub fn trivial_to_tree_stack(m: &Automaton) -> Result<Automaton, AnalysisError> {
    require(m, StorageKind::Trivial)?;
    let mut b = copy_into(m, StorageKind::TreeStack);
    let boxed = fresh_symbol(&mut b, "□");
    let box_id = boxed.symbol().copied().expect("symbol");
    for t in &m.transitions {
        b.transition(
            t.from,
            t.read,
            Predicate::Any,
            Instruction::Push {
                branch: 0,
                label: box_id,
            },
            t.to,
        );
    }
    for q in 0..m.states.len() {
        b.transition(q, None, Predicate::Equals(boxed), Instruction::Down, q);
    }
    for &q in &m.finals {
        b.add_final(q);
    }
    Ok(b.build()?)
}
