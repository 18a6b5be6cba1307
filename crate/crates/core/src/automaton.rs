//! Automata with storage: states, transitions, configurations and the one-step
//! relation of the graph realisation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::tree_stack::{Branch, Label, TreeAddress, TreeStack};

pub type StateId = usize;
pub type LetterId = usize;
pub type SymbolId = u32;

/// Label of a tree vertex or top of a push-down stack. `Root` doubles as the
/// empty-stack marker for push-down storage.
pub type StoreLabel = Label<SymbolId>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StorageKind {
    Trivial,
    Pushdown,
    TreeStack,
}

impl StorageKind {
    pub fn name(self) -> &'static str {
        match self {
            StorageKind::Trivial => "trivial",
            StorageKind::Pushdown => "pushdown",
            StorageKind::TreeStack => "tree_stack",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    Any,
    Equals(StoreLabel),
    /// Holds when the current label is none of the listed labels.
    NotEquals(BTreeSet<StoreLabel>),
}

impl Predicate {
    pub fn not_equals(labels: impl IntoIterator<Item = StoreLabel>) -> Self {
        Predicate::NotEquals(labels.into_iter().collect())
    }

    pub fn holds(&self, label: &StoreLabel) -> bool {
        match self {
            Predicate::Any => true,
            Predicate::Equals(l) => l == label,
            Predicate::NotEquals(set) => !set.contains(label),
        }
    }

    pub fn mentions_root(&self) -> bool {
        match self {
            Predicate::Any => false,
            Predicate::Equals(l) => l.is_root(),
            Predicate::NotEquals(set) => set.contains(&Label::Root),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Instruction {
    Id,
    Push { branch: Branch, label: SymbolId },
    Up(Branch),
    Down,
    Set(SymbolId),
    PdPush(SymbolId),
    PdPop(SymbolId),
}

impl Instruction {
    pub fn is_push(&self) -> bool {
        matches!(self, Instruction::Push { .. })
    }

    /// Instructions that leave the pointer where it is.
    pub fn is_stationary(&self) -> bool {
        matches!(self, Instruction::Id | Instruction::Set(_))
    }

    fn compatible_with(&self, kind: StorageKind) -> bool {
        match self {
            Instruction::Id => true,
            Instruction::Push { .. }
            | Instruction::Up(_)
            | Instruction::Down
            | Instruction::Set(_) => kind == StorageKind::TreeStack,
            Instruction::PdPush(_) | Instruction::PdPop(_) => kind == StorageKind::Pushdown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: StateId,
    /// `None` is an ε-transition.
    pub read: Option<LetterId>,
    pub predicate: Predicate,
    pub instruction: Instruction,
    pub to: StateId,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("unknown storage symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("transition {index}: {reason}")]
    BadTransition { index: usize, reason: String },
    #[error("automaton has no initial state")]
    NoInitialState,
}

/// An automaton with storage `(Q, T, I, δ)`. The initial storage configuration
/// is the unique one of the storage type: the root-only tree, the empty stack,
/// or the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    pub storage: StorageKind,
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub symbols: Vec<String>,
    pub initial: StateId,
    pub finals: BTreeSet<StateId>,
    pub transitions: Vec<Transition>,
}

impl Automaton {
    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn letter_id(&self, name: &str) -> Option<LetterId> {
        self.alphabet.iter().position(|s| s == name)
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| i as SymbolId)
    }

    pub fn label_name(&self, label: &StoreLabel) -> String {
        match label {
            Label::Root => crate::ROOT_NAME.to_string(),
            Label::Sym(s) => self.symbols[*s as usize].clone(),
        }
    }

    /// Resolves a sequence of letter names into letter ids.
    pub fn word<S: AsRef<str>>(&self, letters: &[S]) -> Result<Vec<LetterId>, AutomatonError> {
        letters
            .iter()
            .map(|l| {
                self.letter_id(l.as_ref())
                    .ok_or_else(|| AutomatonError::UnknownLetter(l.as_ref().to_string()))
            })
            .collect()
    }

    /// Splits `text` into letters (characters, or `sep`-separated tokens) and resolves them.
    pub fn parse_word(
        &self,
        text: &str,
        sep: Option<&str>,
    ) -> Result<Vec<LetterId>, AutomatonError> {
        self.word(&split_word(text, sep))
    }

    pub fn has_up(&self) -> bool {
        self.transitions
            .iter()
            .any(|t| matches!(t.instruction, Instruction::Up(_)))
    }

    pub fn push_count(&self) -> usize {
        self.transitions
            .iter()
            .filter(|t| t.instruction.is_push())
            .count()
    }

    pub fn initial_configuration(&self) -> Configuration {
        Configuration {
            state: self.initial,
            storage: Storage::initial(self.storage),
        }
    }

    /// Applies one transition to a configuration, if it is applicable: the
    /// source state matches, the predicate holds and the instruction is defined.
    pub fn apply(&self, config: &Configuration, transition: &Transition) -> Option<Configuration> {
        if transition.from != config.state
            || !transition.predicate.holds(&config.storage.current_label())
        {
            return None;
        }
        let storage = config.storage.execute(&transition.instruction)?;
        Some(Configuration {
            state: transition.to,
            storage,
        })
    }

    /// Edges of the graph realisation leaving `config` whose label is `next`
    /// (`None` for ε), as pairs of transition index and target configuration.
    pub fn successors(
        &self,
        config: &Configuration,
        next: Option<LetterId>,
    ) -> Vec<(usize, Configuration)> {
        self.transitions
            .iter()
            .enumerate()
            .filter(|(_, t)| t.read == next)
            .filter_map(|(i, t)| self.apply(config, t).map(|c| (i, c)))
            .collect()
    }

    pub fn describe_predicate(&self, p: &Predicate) -> String {
        match p {
            Predicate::Any => "any".into(),
            Predicate::Equals(l) => format!("equals({})", self.label_name(l)),
            Predicate::NotEquals(set) => {
                let names: Vec<String> = set.iter().map(|l| self.label_name(l)).collect();
                format!("notequals({})", names.join(","))
            }
        }
    }

    pub fn describe_instruction(&self, i: &Instruction) -> String {
        let sym = |s: &SymbolId| self.symbols[*s as usize].clone();
        match i {
            Instruction::Id => "id".into(),
            Instruction::Push { branch, label } => format!("push{}({})", branch, sym(label)),
            Instruction::Up(b) => format!("up{b}"),
            Instruction::Down => "down".into(),
            Instruction::Set(s) => format!("set({})", sym(s)),
            Instruction::PdPush(s) => format!("pd_push({})", sym(s)),
            Instruction::PdPop(s) => format!("pd_pop({})", sym(s)),
        }
    }

    pub fn describe_transition(&self, t: &Transition) -> String {
        format!(
            "({}, {}, {}, {}, {})",
            self.states[t.from],
            t.read.map_or("ε".to_string(), |l| self.alphabet[l].clone()),
            self.describe_predicate(&t.predicate),
            self.describe_instruction(&t.instruction),
            self.states[t.to]
        )
    }

    /// Structural validation of ids and instruction/storage compatibility.
    pub fn validate(&self) -> Result<(), AutomatonError> {
        let nstates = self.states.len();
        if self.initial >= nstates {
            return Err(AutomatonError::NoInitialState);
        }
        check_unique(&self.states)?;
        check_unique(&self.alphabet)?;
        check_unique(&self.symbols)?;
        if let Some(f) = self.finals.iter().find(|&&f| f >= nstates) {
            return Err(AutomatonError::UnknownState(f.to_string()));
        }
        let nsyms = self.symbols.len() as SymbolId;
        let label_ok = |l: &StoreLabel| match l {
            Label::Root => true,
            Label::Sym(s) => *s < nsyms,
        };
        for (index, t) in self.transitions.iter().enumerate() {
            let bad = |reason: &str| AutomatonError::BadTransition {
                index,
                reason: reason.to_string(),
            };
            if t.from >= nstates || t.to >= nstates {
                return Err(bad("state out of range"));
            }
            if t.read.is_some_and(|l| l >= self.alphabet.len()) {
                return Err(bad("letter out of range"));
            }
            if !t.instruction.compatible_with(self.storage) {
                return Err(bad(&format!(
                    "instruction not available for {} storage",
                    self.storage.name()
                )));
            }
            let syms_ok = match &t.predicate {
                Predicate::Any => true,
                Predicate::Equals(l) => label_ok(l),
                Predicate::NotEquals(set) => !set.is_empty() && set.iter().all(label_ok),
            };
            if !syms_ok {
                return Err(bad("predicate label out of range or empty set"));
            }
            if self.storage == StorageKind::Trivial && t.predicate != Predicate::Any {
                return Err(bad("trivial storage only has the predicate `any`"));
            }
            match t.instruction {
                Instruction::Push { label, .. }
                | Instruction::Set(label)
                | Instruction::PdPush(label)
                | Instruction::PdPop(label)
                    if label >= nsyms =>
                {
                    return Err(bad("instruction label out of range"));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

fn check_unique(names: &[String]) -> Result<(), AutomatonError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(AutomatonError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// Splits a word given on the command line or in a test. `ε` and the empty
/// string are the empty word.
pub fn split_word(text: &str, sep: Option<&str>) -> Vec<String> {
    if text.is_empty() || text == "ε" {
        return Vec::new();
    }
    match sep {
        Some(sep) => text
            .split(sep)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect(),
        None => text.chars().map(|c| c.to_string()).collect(),
    }
}

/// Storage configuration of one of the three storage types.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Storage {
    Unit,
    Stack(Vec<SymbolId>),
    Tree(TreeStack<SymbolId>),
}

impl Storage {
    pub fn initial(kind: StorageKind) -> Self {
        match kind {
            StorageKind::Trivial => Storage::Unit,
            StorageKind::Pushdown => Storage::Stack(Vec::new()),
            StorageKind::TreeStack => Storage::Tree(TreeStack::root_stack()),
        }
    }

    /// The label predicates are evaluated against.
    pub fn current_label(&self) -> StoreLabel {
        match self {
            Storage::Unit => Label::Root,
            Storage::Stack(s) => s.last().map_or(Label::Root, |&x| Label::Sym(x)),
            Storage::Tree(t) => *t.label_at_pointer(),
        }
    }

    /// One plus the stack height or the pointer depth.
    pub fn weight(&self) -> usize {
        1 + match self {
            Storage::Unit => 0,
            Storage::Stack(s) => s.len(),
            Storage::Tree(t) => t.pointer().depth(),
        }
    }

    pub fn pointer(&self) -> Option<&TreeAddress> {
        match self {
            Storage::Tree(t) => Some(t.pointer()),
            _ => None,
        }
    }

    pub fn execute(&self, instruction: &Instruction) -> Option<Storage> {
        match (self, instruction) {
            (_, Instruction::Id) => Some(self.clone()),
            (Storage::Tree(t), Instruction::Push { branch, label }) => {
                t.push(*branch, *label).ok().map(Storage::Tree)
            }
            (Storage::Tree(t), Instruction::Up(n)) => t.up(*n).ok().map(Storage::Tree),
            (Storage::Tree(t), Instruction::Down) => t.down().ok().map(Storage::Tree),
            (Storage::Tree(t), Instruction::Set(label)) => t.set(*label).ok().map(Storage::Tree),
            (Storage::Stack(s), Instruction::PdPush(x)) => {
                let mut s = s.clone();
                s.push(*x);
                Some(Storage::Stack(s))
            }
            (Storage::Stack(s), Instruction::PdPop(x)) => {
                if s.last() == Some(x) {
                    Some(Storage::Stack(s[..s.len() - 1].to_vec()))
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub storage: Storage,
}

/// Incremental construction by name. Names are interned on first use.
#[derive(Debug)]
pub struct AutomatonBuilder {
    storage: StorageKind,
    states: Vec<String>,
    state_index: HashMap<String, StateId>,
    alphabet: Vec<String>,
    letter_index: HashMap<String, LetterId>,
    symbols: Vec<String>,
    symbol_index: HashMap<String, SymbolId>,
    initial: Option<StateId>,
    finals: BTreeSet<StateId>,
    transitions: Vec<Transition>,
    seen: std::collections::HashSet<Transition>,
}

impl AutomatonBuilder {
    pub fn new(storage: StorageKind) -> Self {
        AutomatonBuilder {
            storage,
            states: Vec::new(),
            state_index: HashMap::new(),
            alphabet: Vec::new(),
            letter_index: HashMap::new(),
            symbols: Vec::new(),
            symbol_index: HashMap::new(),
            initial: None,
            finals: BTreeSet::new(),
            transitions: Vec::new(),
            seen: Default::default(),
        }
    }

    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(&id) = self.state_index.get(name) {
            return id;
        }
        let id = self.states.len();
        self.states.push(name.to_string());
        self.state_index.insert(name.to_string(), id);
        id
    }

    pub fn has_state(&self, name: &str) -> bool {
        self.state_index.contains_key(name)
    }

    pub fn letter(&mut self, name: &str) -> LetterId {
        if let Some(&id) = self.letter_index.get(name) {
            return id;
        }
        let id = self.alphabet.len();
        self.alphabet.push(name.to_string());
        self.letter_index.insert(name.to_string(), id);
        id
    }

    pub fn symbol(&mut self, name: &str) -> SymbolId {
        if let Some(&id) = self.symbol_index.get(name) {
            return id;
        }
        let id = self.symbols.len() as SymbolId;
        self.symbols.push(name.to_string());
        self.symbol_index.insert(name.to_string(), id);
        id
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.symbol_index.contains_key(name)
    }

    pub fn sym(&mut self, name: &str) -> StoreLabel {
        Label::Sym(self.symbol(name))
    }

    pub fn set_initial(&mut self, state: StateId) -> &mut Self {
        self.initial = Some(state);
        self
    }

    pub fn add_final(&mut self, state: StateId) -> &mut Self {
        self.finals.insert(state);
        self
    }

    /// Adds a transition; exact duplicates are dropped.
    pub fn transition(
        &mut self,
        from: StateId,
        read: Option<LetterId>,
        predicate: Predicate,
        instruction: Instruction,
        to: StateId,
    ) -> &mut Self {
        let t = Transition {
            from,
            read,
            predicate,
            instruction,
            to,
        };
        if self.seen.insert(t.clone()) {
            self.transitions.push(t);
        }
        self
    }

    pub fn build(self) -> Result<Automaton, AutomatonError> {
        let automaton = Automaton {
            storage: self.storage,
            states: self.states,
            alphabet: self.alphabet,
            symbols: self.symbols,
            initial: self.initial.ok_or(AutomatonError::NoInitialState)?,
            finals: self.finals,
            transitions: self.transitions,
        };
        automaton.validate()?;
        Ok(automaton)
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} automaton: {} states, {} transitions",
            self.storage.name(),
            self.states.len(),
            self.transitions.len()
        )?;
        for t in &self.transitions {
            writeln!(f, "  {}", self.describe_transition(t))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state_fsa() -> Automaton {
        let mut b = AutomatonBuilder::new(StorageKind::Trivial);
        let p = b.state("p");
        let q = b.state("q");
        let a = b.letter("a");
        b.transition(p, Some(a), Predicate::Any, Instruction::Id, q);
        b.transition(q, Some(a), Predicate::Any, Instruction::Id, p);
        b.set_initial(p).add_final(p);
        b.build().unwrap()
    }

    #[test]
    fn trivial_successors_follow_edges() {
        let m = two_state_fsa();
        let c = m.initial_configuration();
        let next = m.successors(&c, Some(0));
        assert_eq!(next.len(), 1);
        assert_eq!(next[0].1.state, 1);
        assert!(m.successors(&c, None).is_empty());
    }

    #[test]
    fn equals_root_blocks_elsewhere() {
        let mut b = AutomatonBuilder::new(StorageKind::TreeStack);
        let s = b.state("s");
        let t = b.letter("t");
        let sym = b.symbol("t");
        b.transition(
            s,
            Some(t),
            Predicate::Any,
            Instruction::Push {
                branch: 1,
                label: sym,
            },
            s,
        );
        b.transition(s, None, Predicate::Equals(Label::Root), Instruction::Id, s);
        b.set_initial(s);
        let m = b.build().unwrap();
        let c0 = m.initial_configuration();
        assert_eq!(m.successors(&c0, None).len(), 1);
        let (_, c1) = m.successors(&c0, Some(t)).pop().unwrap();
        assert!(m.successors(&c1, None).is_empty());
    }

    #[test]
    fn validation_rejects_incompatible_instruction() {
        let mut b = AutomatonBuilder::new(StorageKind::Trivial);
        let s = b.state("s");
        b.transition(s, None, Predicate::Any, Instruction::Down, s);
        b.set_initial(s);
        assert!(matches!(
            b.build(),
            Err(AutomatonError::BadTransition { .. })
        ));
    }

    #[test]
    fn pushdown_pop_requires_top() {
        let stack = Storage::Stack(vec![0, 1]);
        assert_eq!(
            stack.execute(&Instruction::PdPop(1)),
            Some(Storage::Stack(vec![0]))
        );
        assert_eq!(stack.execute(&Instruction::PdPop(0)), None);
        assert_eq!(Storage::Stack(vec![]).current_label(), Label::Root);
    }

    #[test]
    fn split_word_handles_epsilon_and_separators() {
        assert!(split_word("ε", None).is_empty());
        assert_eq!(split_word("tT", None), vec!["t", "T"]);
        assert_eq!(split_word("x1,x2", Some(",")), vec!["x1", "x2"]);
    }
}
