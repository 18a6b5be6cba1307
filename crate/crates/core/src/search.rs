//! Nondeterministic acceptance search over the graph realisation.
//!
//! Two engines share one contract. The explicit engine walks concrete
//! configurations breadth-first with global deduplication and works for every
//! automaton. The summary engine handles automata without `up` instructions:
//! there, a vertex left by `down` can never be revisited, so the relevant part
//! of a tree-stack is the spine from the root to the pointer, each spine
//! vertex reduced to its label and the set of branches already occupied. That
//! makes the storage a push-down store over a finite cell alphabet, and the
//! search tabulates same-level summaries the way context-free reachability
//! does. It terminates on every input and its rejections are exact.
//!
//! Two refinements keep the cell alphabet small. Branches whose push
//! transitions are identical up to the branch number form a class, and a cell
//! only records how many branches of each class are taken. A cell with fewer
//! occupied branches can do everything a cell with more can, so facts that are
//! dominated in this order are dropped.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rustc_hash::FxHashMap;
use smallvec::{smallvec, SmallVec};

use thiserror::Error;

use crate::automaton::{
    Automaton, Configuration, Instruction, LetterId, Predicate, StateId, Storage, StorageKind,
    StoreLabel, SymbolId,
};
use crate::tree_stack::{Branch, Label, TreeAddress};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_configurations: usize,
    pub max_eps_moves_between_letters: usize,
    /// Cap on the summed [`Storage::weight`] of the configurations the
    /// explicit engine keeps; a deep tree costs memory along its whole spine.
    pub max_storage_cells: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_configurations: 1_000_000,
            max_eps_moves_between_letters: 10_000,
            max_storage_cells: 20_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accepted,
    Rejected,
    BudgetExhausted,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Accepted => "accepted",
            Verdict::Rejected => "rejected",
            Verdict::BudgetExhausted => "budget-exhausted",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Summary engine when the automaton has no `up`, explicit otherwise.
    #[default]
    Auto,
    Explicit,
    Summary,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RunError {
    #[error("step {step}: transition {transition} does not apply")]
    NotApplicable { step: usize, transition: usize },
    #[error("run does not start at the initial configuration")]
    BadStart,
}

/// A path in the graph realisation: `configurations[i]` leads to
/// `configurations[i + 1]` through `transitions[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub configurations: Vec<Configuration>,
    pub transitions: Vec<usize>,
}

impl Run {
    /// Replays transition indices from the initial configuration.
    pub fn replay(m: &Automaton, transitions: &[usize]) -> Result<Run, RunError> {
        let mut configurations = vec![m.initial_configuration()];
        for (step, &t) in transitions.iter().enumerate() {
            let next = m
                .apply(configurations.last().expect("nonempty"), &m.transitions[t])
                .ok_or(RunError::NotApplicable {
                    step,
                    transition: t,
                })?;
            configurations.push(next);
        }
        Ok(Run {
            configurations,
            transitions: transitions.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn last(&self) -> &Configuration {
        self.configurations
            .last()
            .expect("a run has a configuration")
    }

    /// The non-ε labels along the run.
    pub fn word_read(&self, m: &Automaton) -> Vec<LetterId> {
        self.transitions
            .iter()
            .filter_map(|&t| m.transitions[t].read)
            .collect()
    }

    /// Checks that every step is an edge of the graph realisation.
    pub fn validate(&self, m: &Automaton) -> Result<(), RunError> {
        if self.configurations.first() != Some(&m.initial_configuration())
            || self.configurations.len() != self.transitions.len() + 1
        {
            return Err(RunError::BadStart);
        }
        for (step, &t) in self.transitions.iter().enumerate() {
            if m.apply(&self.configurations[step], &m.transitions[t])
                .as_ref()
                != Some(&self.configurations[step + 1])
            {
                return Err(RunError::NotApplicable {
                    step,
                    transition: t,
                });
            }
        }
        Ok(())
    }

    /// Number of configurations of the run whose pointer is at each address.
    pub fn visits_per_vertex(&self) -> BTreeMap<TreeAddress, usize> {
        let mut visits = BTreeMap::new();
        for c in &self.configurations {
            if let Some(p) = c.storage.pointer() {
                *visits.entry(p.clone()).or_insert(0) += 1;
            }
        }
        visits
    }

    pub fn max_visits(&self) -> usize {
        self.visits_per_vertex().into_values().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub run: Option<Run>,
    /// Configurations (explicit) or summary facts (summary) generated.
    pub explored: usize,
}

pub fn accepts(m: &Automaton, word: &[LetterId], budget: &SearchBudget) -> Verdict {
    search(m, word, budget, Strategy::Auto).verdict
}

pub fn find_accepting_run(m: &Automaton, word: &[LetterId], budget: &SearchBudget) -> Option<Run> {
    search(m, word, budget, Strategy::Auto).run
}

pub fn search(
    m: &Automaton,
    word: &[LetterId],
    budget: &SearchBudget,
    strategy: Strategy,
) -> SearchOutcome {
    Searcher::new(m, strategy).search(word, budget)
}

/// An automaton prepared for repeated searches with one strategy.
pub struct Searcher<'a> {
    m: &'a Automaton,
    tables: Option<Tables>,
}

impl<'a> Searcher<'a> {
    pub fn new(m: &'a Automaton, strategy: Strategy) -> Self {
        let summary = match strategy {
            Strategy::Auto => !m.has_up(),
            Strategy::Explicit => false,
            Strategy::Summary => {
                assert!(
                    !m.has_up(),
                    "the summary engine needs an automaton without `up`"
                );
                true
            }
        };
        Searcher {
            m,
            tables: summary.then(|| Tables::new(m)),
        }
    }

    pub fn automaton(&self) -> &'a Automaton {
        self.m
    }

    pub fn search(&self, word: &[LetterId], budget: &SearchBudget) -> SearchOutcome {
        match &self.tables {
            Some(tables) => SummarySearch::new(self.m, tables, word, budget).run(),
            None => explicit_search(self.m, word, budget),
        }
    }

    pub fn accepts(&self, word: &[LetterId], budget: &SearchBudget) -> Verdict {
        self.search(word, budget).verdict
    }
}

fn explicit_search(m: &Automaton, word: &[LetterId], budget: &SearchBudget) -> SearchOutcome {
    struct Entry {
        pos: usize,
        config: Configuration,
        parent: Option<(usize, usize)>,
        eps_depth: usize,
    }
    let mut entries: Vec<Entry> = Vec::new();
    let mut index: HashMap<(usize, Configuration), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut exhausted = false;
    let mut cells = 0usize;

    let witness = |entries: &Vec<Entry>, mut i: usize| {
        let mut ts = Vec::new();
        while let Some((parent, t)) = entries[i].parent {
            ts.push(t);
            i = parent;
        }
        ts.reverse();
        Run::replay(m, &ts).expect("explicit witness replays")
    };

    let start = m.initial_configuration();
    index.insert((0, start.clone()), 0);
    entries.push(Entry {
        pos: 0,
        config: start,
        parent: None,
        eps_depth: 0,
    });
    queue.push_back(0);

    while let Some(i) = queue.pop_front() {
        let (pos, depth) = (entries[i].pos, entries[i].eps_depth);
        if pos == word.len() && m.finals.contains(&entries[i].config.state) {
            return SearchOutcome {
                verdict: Verdict::Accepted,
                run: Some(witness(&entries, i)),
                explored: entries.len(),
            };
        }
        let config = entries[i].config.clone();
        let mut moves: Vec<(usize, usize, Configuration, usize)> = Vec::new();
        if depth < budget.max_eps_moves_between_letters {
            for (t, c) in m.successors(&config, None) {
                moves.push((pos, t, c, depth + 1));
            }
        } else if !m.successors(&config, None).is_empty() {
            exhausted = true;
        }
        if pos < word.len() {
            for (t, c) in m.successors(&config, Some(word[pos])) {
                moves.push((pos + 1, t, c, 0));
            }
        }
        for (npos, t, c, ndepth) in moves {
            let key = (npos, c);
            if index.contains_key(&key) {
                continue;
            }
            cells += key.1.storage.weight();
            if entries.len() >= budget.max_configurations || cells > budget.max_storage_cells {
                exhausted = true;
                break;
            }
            let id = entries.len();
            index.insert(key.clone(), id);
            entries.push(Entry {
                pos: npos,
                config: key.1,
                parent: Some((i, t)),
                eps_depth: ndepth,
            });
            queue.push_back(id);
        }
        if exhausted
            && (entries.len() >= budget.max_configurations || cells > budget.max_storage_cells)
        {
            break;
        }
    }
    SearchOutcome {
        verdict: if exhausted {
            Verdict::BudgetExhausted
        } else {
            Verdict::Rejected
        },
        run: None,
        explored: entries.len(),
    }
}

/// What a compiled transition does to the top cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Action {
    /// `id` or `set`.
    Stay(Option<SymbolId>),
    /// Tree push on a branch of the given class, or a push-down push (`class` is `None`).
    Push {
        class: Option<usize>,
        label: SymbolId,
    },
    /// `down`, or `pd_pop` of the given symbol.
    Pop(Option<SymbolId>),
}

#[derive(Clone, Debug)]
struct Compiled {
    read: Option<LetterId>,
    predicate: Predicate,
    action: Action,
    to: StateId,
    originals: Vec<usize>,
}

/// Pushes spent per branch class.
type Used = SmallVec<[u16; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Cell {
    label: StoreLabel,
    used: Used,
}

enum Deriv {
    Start,
    Step {
        prev: usize,
        t: usize,
    },
    Call {
        caller: usize,
        push: usize,
        exit: usize,
        pop: usize,
    },
}

struct Fact {
    node: usize,
    pos: usize,
    state: StateId,
    cell: Cell,
    deriv: Deriv,
}

struct Caller {
    fact: usize,
    push: usize,
    cell_after: Cell,
}

struct Return {
    fact: usize,
    pop: usize,
    pos: usize,
    state: StateId,
}

#[derive(Default)]
struct NodeInfo {
    creator: Option<(usize, usize)>,
    callers: Vec<Caller>,
    returns: Vec<Return>,
}

/// Branch classes of an up-free tree-stack automaton.
fn branch_classes(m: &Automaton) -> (HashMap<Branch, usize>, Vec<u16>) {
    type Sig = Vec<(StateId, Option<LetterId>, Predicate, SymbolId, StateId)>;
    let mut per_branch: BTreeMap<Branch, Sig> = BTreeMap::new();
    for t in &m.transitions {
        if let Instruction::Push { branch, label } = t.instruction {
            per_branch.entry(branch).or_default().push((
                t.from,
                t.read,
                t.predicate.clone(),
                label,
                t.to,
            ));
        }
    }
    let mut by_sig: Vec<(Sig, Vec<Branch>)> = Vec::new();
    for (b, mut sig) in per_branch {
        sig.sort();
        match by_sig.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, bs)) => bs.push(b),
            None => by_sig.push((sig, vec![b])),
        }
    }
    let mut class_of = HashMap::new();
    let mut sizes = Vec::new();
    for (class, (_, branches)) in by_sig.into_iter().enumerate() {
        sizes.push(branches.len() as u16);
        for b in branches {
            class_of.insert(b, class);
        }
    }
    (class_of, sizes)
}

/// Transitions compiled for the summary engine: duplicate moves merged and
/// push branches grouped into interchangeable classes.
struct Tables {
    compiled: Vec<Compiled>,
    by_state: Vec<Vec<usize>>,
    class_sizes: Vec<u16>,
}

impl Tables {
    fn new(m: &Automaton) -> Self {
        let (class_of, class_sizes) = if m.storage == StorageKind::TreeStack {
            branch_classes(m)
        } else {
            (HashMap::new(), Vec::new())
        };
        let mut compiled: Vec<Compiled> = Vec::new();
        let mut dedup: FxHashMap<(StateId, Option<LetterId>, Predicate, Action, StateId), usize> =
            FxHashMap::default();
        for (i, t) in m.transitions.iter().enumerate() {
            let action = match t.instruction {
                Instruction::Id => Action::Stay(None),
                Instruction::Set(s) => Action::Stay(Some(s)),
                Instruction::Push { branch, label } => Action::Push {
                    class: Some(class_of[&branch]),
                    label,
                },
                Instruction::PdPush(label) => Action::Push { class: None, label },
                Instruction::Down => Action::Pop(None),
                Instruction::PdPop(s) => Action::Pop(Some(s)),
                Instruction::Up(_) => unreachable!("summary engine requires an up-free automaton"),
            };
            let key = (t.from, t.read, t.predicate.clone(), action.clone(), t.to);
            match dedup.get(&key) {
                Some(&c) => compiled[c].originals.push(i),
                None => {
                    dedup.insert(key, compiled.len());
                    compiled.push(Compiled {
                        read: t.read,
                        predicate: t.predicate.clone(),
                        action,
                        to: t.to,
                        originals: vec![i],
                    });
                }
            }
        }
        let mut by_state = vec![Vec::new(); m.states.len()];
        for (c, comp) in compiled.iter().enumerate() {
            by_state[m.transitions[comp.originals[0]].from].push(c);
        }
        Tables {
            compiled,
            by_state,
            class_sizes,
        }
    }
}

struct SummarySearch<'a> {
    m: &'a Automaton,
    word: &'a [LetterId],
    budget: &'a SearchBudget,
    tables: &'a Tables,
    facts: Vec<Fact>,
    nodes: Vec<NodeInfo>,
    node_index: FxHashMap<(usize, StateId, Cell), usize>,
    antichains: FxHashMap<(usize, usize, StateId, StoreLabel), Vec<Used>>,
    worklist: VecDeque<usize>,
}

impl<'a> SummarySearch<'a> {
    fn new(
        m: &'a Automaton,
        tables: &'a Tables,
        word: &'a [LetterId],
        budget: &'a SearchBudget,
    ) -> Self {
        SummarySearch {
            m,
            word,
            budget,
            tables,
            facts: Vec::new(),
            nodes: Vec::new(),
            node_index: FxHashMap::default(),
            antichains: FxHashMap::default(),
            worklist: VecDeque::new(),
        }
    }

    fn fresh_cell(&self, label: StoreLabel) -> Cell {
        Cell {
            label,
            used: smallvec![0; self.tables.class_sizes.len()],
        }
    }

    fn add_fact(&mut self, node: usize, pos: usize, state: StateId, cell: Cell, deriv: Deriv) {
        let chain = self
            .antichains
            .entry((node, pos, state, cell.label))
            .or_default();
        if chain
            .iter()
            .any(|u| u.iter().zip(cell.used.iter()).all(|(a, b)| a <= b))
        {
            return;
        }
        chain.push(cell.used.clone());
        let id = self.facts.len();
        self.facts.push(Fact {
            node,
            pos,
            state,
            cell,
            deriv,
        });
        self.worklist.push_back(id);
    }

    /// Returns the node for a fresh context and whether it was just created.
    fn node(&mut self, pos: usize, state: StateId, cell: Cell) -> (usize, bool) {
        let key = (pos, state, cell);
        if let Some(&n) = self.node_index.get(&key) {
            return (n, false);
        }
        let n = self.nodes.len();
        self.nodes.push(NodeInfo::default());
        self.node_index.insert(key, n);
        (n, true)
    }

    fn run(mut self) -> SearchOutcome {
        let root_cell = self.fresh_cell(Label::Root);
        let (root, _) = self.node(0, self.m.initial, root_cell.clone());
        self.add_fact(root, 0, self.m.initial, root_cell, Deriv::Start);

        while let Some(f) = self.worklist.pop_front() {
            if self.facts.len() + self.nodes.len() > self.budget.max_configurations {
                return SearchOutcome {
                    verdict: Verdict::BudgetExhausted,
                    run: None,
                    explored: self.facts.len(),
                };
            }
            let (node, pos, state) = (self.facts[f].node, self.facts[f].pos, self.facts[f].state);
            if pos == self.word.len() && self.m.finals.contains(&state) {
                let path = self.full_path(f);
                let run = self.concretize(&path);
                return SearchOutcome {
                    verdict: Verdict::Accepted,
                    run: Some(run),
                    explored: self.facts.len(),
                };
            }
            let cell = self.facts[f].cell.clone();
            for k in 0..self.tables.by_state[state].len() {
                let ci = self.tables.by_state[state][k];
                let comp = &self.tables.compiled[ci];
                if !comp.predicate.holds(&cell.label) {
                    continue;
                }
                let npos = match comp.read {
                    None => pos,
                    Some(a) if self.word.get(pos) == Some(&a) => pos + 1,
                    Some(_) => continue,
                };
                let to = comp.to;
                match comp.action.clone() {
                    Action::Stay(set) => {
                        let mut next = cell.clone();
                        if let Some(s) = set {
                            if next.label.is_root() {
                                continue;
                            }
                            next.label = Label::Sym(s);
                        }
                        self.add_fact(node, npos, to, next, Deriv::Step { prev: f, t: ci });
                    }
                    Action::Push { class, label } => {
                        let mut after = cell.clone();
                        if let Some(c) = class {
                            if after.used[c] >= self.tables.class_sizes[c] {
                                continue;
                            }
                            after.used[c] += 1;
                        }
                        let child_cell = self.fresh_cell(Label::Sym(label));
                        let (child, created) = self.node(npos, to, child_cell.clone());
                        if created {
                            self.nodes[child].creator = Some((f, ci));
                            self.add_fact(child, npos, to, child_cell, Deriv::Start);
                        }
                        let returns: Vec<(usize, usize, usize, StateId)> = self.nodes[child]
                            .returns
                            .iter()
                            .map(|r| (r.fact, r.pop, r.pos, r.state))
                            .collect();
                        for (exit, pop, rpos, rstate) in returns {
                            self.add_fact(
                                node,
                                rpos,
                                rstate,
                                after.clone(),
                                Deriv::Call {
                                    caller: f,
                                    push: ci,
                                    exit,
                                    pop,
                                },
                            );
                        }
                        self.nodes[child].callers.push(Caller {
                            fact: f,
                            push: ci,
                            cell_after: after,
                        });
                    }
                    Action::Pop(required) => {
                        if cell.label.is_root() {
                            continue;
                        }
                        if let Some(s) = required {
                            if cell.label != Label::Sym(s) {
                                continue;
                            }
                        }
                        let callers: Vec<(usize, usize, Cell)> = self.nodes[node]
                            .callers
                            .iter()
                            .map(|c| (c.fact, c.push, c.cell_after.clone()))
                            .collect();
                        for (caller, push, after) in callers {
                            let caller_node = self.facts[caller].node;
                            self.add_fact(
                                caller_node,
                                npos,
                                to,
                                after,
                                Deriv::Call {
                                    caller,
                                    push,
                                    exit: f,
                                    pop: ci,
                                },
                            );
                        }
                        self.nodes[node].returns.push(Return {
                            fact: f,
                            pop: ci,
                            pos: npos,
                            state: to,
                        });
                    }
                }
            }
        }
        SearchOutcome {
            verdict: Verdict::Rejected,
            run: None,
            explored: self.facts.len(),
        }
    }

    /// Compiled transitions from the start of the fact's node to the fact.
    fn local_path(&self, f: usize, out: &mut Vec<usize>) {
        match self.facts[f].deriv {
            Deriv::Start => {}
            Deriv::Step { prev, t } => {
                self.local_path(prev, out);
                out.push(t);
            }
            Deriv::Call {
                caller,
                push,
                exit,
                pop,
            } => {
                self.local_path(caller, out);
                out.push(push);
                self.local_path(exit, out);
                out.push(pop);
            }
        }
    }

    fn full_path(&self, f: usize) -> Vec<usize> {
        let mut out = Vec::new();
        if let Some((creator, push)) = self.nodes[self.facts[f].node].creator {
            out = self.full_path(creator);
            out.push(push);
        }
        self.local_path(f, &mut out);
        out
    }

    /// Turns compiled steps into a concrete run, picking a free branch for
    /// each class push.
    fn concretize(&self, path: &[usize]) -> Run {
        let mut config = self.m.initial_configuration();
        let mut configurations = vec![config.clone()];
        let mut transitions = Vec::with_capacity(path.len());
        for &ci in path {
            let (t, next) = self.tables.compiled[ci]
                .originals
                .iter()
                .find_map(|&t| {
                    self.m
                        .apply(&config, &self.m.transitions[t])
                        .map(|c| (t, c))
                })
                .expect("summary witness replays concretely");
            transitions.push(t);
            configurations.push(next.clone());
            config = next;
        }
        Run {
            configurations,
            transitions,
        }
    }
}

/// All accepting runs for `word` with at most `max_steps` transitions, up to
/// `max_runs` of them. The flag is set when either cap cut the enumeration.
pub fn enumerate_accepting_runs(
    m: &Automaton,
    word: &[LetterId],
    max_steps: usize,
    max_runs: usize,
) -> (Vec<Run>, bool) {
    struct Dfs<'a> {
        m: &'a Automaton,
        word: &'a [LetterId],
        max_steps: usize,
        max_runs: usize,
        runs: Vec<Run>,
        truncated: bool,
        configs: Vec<Configuration>,
        ts: Vec<usize>,
    }
    impl Dfs<'_> {
        fn go(&mut self, pos: usize) {
            if self.runs.len() >= self.max_runs {
                self.truncated = true;
                return;
            }
            let current = self.configs.last().expect("nonempty").clone();
            if pos == self.word.len() && self.m.finals.contains(&current.state) {
                self.runs.push(Run {
                    configurations: self.configs.clone(),
                    transitions: self.ts.clone(),
                });
            }
            let mut moves = self.m.successors(&current, None);
            let eps = moves.len();
            if pos < self.word.len() {
                moves.extend(self.m.successors(&current, Some(self.word[pos])));
            }
            if moves.is_empty() {
                return;
            }
            if self.ts.len() >= self.max_steps {
                self.truncated = true;
                return;
            }
            for (k, (t, c)) in moves.into_iter().enumerate() {
                self.ts.push(t);
                self.configs.push(c);
                self.go(if k < eps { pos } else { pos + 1 });
                self.ts.pop();
                self.configs.pop();
            }
        }
    }
    let mut dfs = Dfs {
        m,
        word,
        max_steps,
        max_runs,
        runs: Vec::new(),
        truncated: false,
        configs: vec![m.initial_configuration()],
        ts: Vec::new(),
    };
    dfs.go(0);
    (dfs.runs, dfs.truncated)
}

/// Configurations reachable while reading `word`, explored exhaustively
/// (for automata whose per-word space is finite). Used by tests to compare engines.
pub fn reachable_count(m: &Automaton, word: &[LetterId], budget: &SearchBudget) -> Option<usize> {
    let mut seen: HashSet<(usize, Configuration)> = HashSet::new();
    let mut queue = VecDeque::new();
    let start = (0, m.initial_configuration());
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((pos, c)) = queue.pop_front() {
        let mut next: Vec<(usize, Configuration)> = m
            .successors(&c, None)
            .into_iter()
            .map(|(_, c)| (pos, c))
            .collect();
        if pos < word.len() {
            next.extend(
                m.successors(&c, Some(word[pos]))
                    .into_iter()
                    .map(|(_, c)| (pos + 1, c)),
            );
        }
        for n in next {
            if seen.insert(n.clone()) {
                if seen.len() > budget.max_configurations {
                    return None;
                }
                queue.push_back(n);
            }
        }
    }
    Some(seen.len())
}

impl Storage {
    pub fn is_at_root(&self) -> bool {
        match self {
            Storage::Tree(t) => t.pointer().is_root(),
            Storage::Stack(s) => s.is_empty(),
            Storage::Unit => true,
        }
    }
}
