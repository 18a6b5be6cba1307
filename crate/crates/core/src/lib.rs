//! Tree-stack automata, automata with storage, multiple context-free
//! grammars and the word-problem constructions built on them.

pub mod analysis;
pub mod automaton;
pub mod compare;
pub mod constructions;
pub mod document;
pub mod mcfg;
pub mod oracle;
pub mod search;
pub mod tree_stack;

/// Display name of the root label.
pub const ROOT_NAME: &str = "◇";

pub use automaton::{
    Automaton, AutomatonBuilder, Configuration, Instruction, Predicate, StorageKind, Transition,
};
pub use search::{accepts, find_accepting_run, Run, SearchBudget, Strategy, Verdict};
pub use tree_stack::{Label, TreeAddress, TreeStack, TreeStackError};
