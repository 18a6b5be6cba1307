//! Multiple context-free grammars and membership by bounded saturation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// A word as a sequence of terminal names.
pub type Word = Vec<String>;
pub type Tuple = Vec<Word>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Terminal(String),
    /// `x_{i+1}` in the flattened argument list.
    Var(usize),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Terminal(a) => write!(f, "{a}"),
            Token::Var(i) => write!(f, "x{}", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRewriting {
    pub arity: usize,
    pub components: Vec<Vec<Token>>,
}

impl LinearRewriting {
    pub fn new(arity: usize, components: Vec<Vec<Token>>) -> Self {
        LinearRewriting { arity, components }
    }

    /// Parses components such as `"a x1 b"`; `ε` or an empty string is the
    /// empty component.
    pub fn parse(arity: usize, components: &[&str]) -> Self {
        let components = components
            .iter()
            .map(|c| {
                c.split_whitespace()
                    .filter(|t| *t != "ε")
                    .map(parse_token)
                    .collect()
            })
            .collect();
        LinearRewriting { arity, components }
    }

    pub fn out_dimension(&self) -> usize {
        self.components.len()
    }

    fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.iter().flatten().filter_map(|t| match t {
            Token::Var(i) => Some(*i),
            Token::Terminal(_) => None,
        })
    }

    pub fn is_linear(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.variables().all(|i| seen.insert(i))
    }

    /// Some argument is not used.
    pub fn is_deleting(&self) -> bool {
        let used: BTreeSet<usize> = self.variables().collect();
        (0..self.arity).any(|i| !used.contains(&i))
    }

    pub fn terminal_count(&self) -> usize {
        self.components
            .iter()
            .flatten()
            .filter(|t| matches!(t, Token::Terminal(_)))
            .count()
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                if c.is_empty() {
                    "ε".to_string()
                } else {
                    c.iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                }
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// `x<digits>` is a variable, anything else a terminal.
pub fn parse_token(t: &str) -> Token {
    match t.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
        Some(i) if i >= 1 => Token::Var(i - 1),
        _ => Token::Terminal(t.to_string()),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McfgError {
    #[error("arity mismatch: rewriting takes {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("unknown nonterminal `{0}`")]
    UnknownNonterminal(String),
    #[error("invalid grammar: {0}")]
    Invalid(String),
}

pub fn apply_rewriting(f: &LinearRewriting, args: &[Word]) -> Result<Tuple, McfgError> {
    if args.len() != f.arity {
        return Err(McfgError::ArityMismatch {
            expected: f.arity,
            found: args.len(),
        });
    }
    Ok(f.components
        .iter()
        .map(|c| {
            let mut out = Vec::new();
            for t in c {
                match t {
                    Token::Terminal(a) => out.push(a.clone()),
                    Token::Var(i) => out.extend(args[*i].iter().cloned()),
                }
            }
            out
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nonterminal {
    pub name: String,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: String,
    pub rhs: Vec<String>,
    pub rewriting: LinearRewriting,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub terminals: Vec<String>,
    pub nonterminals: Vec<Nonterminal>,
    pub start: String,
    pub rules: Vec<Rule>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    StartDimension {
        found: usize,
    },
    UnknownStart(String),
    ZeroDimension(String),
    DuplicateNonterminal(String),
    UnknownNonterminal {
        rule: usize,
        name: String,
    },
    UnknownTerminal {
        rule: usize,
        name: String,
    },
    NonLinear {
        rule: usize,
    },
    ArityMismatch {
        rule: usize,
        expected: usize,
        found: usize,
    },
    DimensionMismatch {
        rule: usize,
        expected: usize,
        found: usize,
    },
    VariableOutOfRange {
        rule: usize,
        var: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::StartDimension { found } => {
                write!(f, "start dimension: start symbol has dimension {found}")
            }
            Violation::UnknownStart(s) => write!(f, "unknown start symbol `{s}`"),
            Violation::ZeroDimension(a) => write!(f, "nonterminal `{a}` has dimension 0"),
            Violation::DuplicateNonterminal(a) => write!(f, "nonterminal `{a}` declared twice"),
            Violation::UnknownNonterminal { rule, name } => {
                write!(f, "rule {rule}: unknown nonterminal `{name}`")
            }
            Violation::UnknownTerminal { rule, name } => {
                write!(f, "rule {rule}: unknown terminal `{name}`")
            }
            Violation::NonLinear { rule } => write!(f, "rule {rule}: non-linear rewriting"),
            Violation::ArityMismatch {
                rule,
                expected,
                found,
            } => {
                write!(
                    f,
                    "rule {rule}: arity {found}, right-hand side needs {expected}"
                )
            }
            Violation::DimensionMismatch {
                rule,
                expected,
                found,
            } => {
                write!(
                    f,
                    "rule {rule}: {found} components, left-hand side has dimension {expected}"
                )
            }
            Violation::VariableOutOfRange { rule, var } => {
                write!(f, "rule {rule}: variable x{} out of range", var + 1)
            }
        }
    }
}

/// Result of [`Grammar::membership`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub accepted: bool,
    /// Set when some rule drops an argument, so the length cap may cut derivations.
    pub deleting_warning: bool,
}

impl Grammar {
    fn dimension(&self, name: &str) -> Option<usize> {
        self.nonterminals
            .iter()
            .find(|n| n.name == name)
            .map(|n| n.dimension)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut names = BTreeSet::new();
        for n in &self.nonterminals {
            if !names.insert(&n.name) {
                out.push(Violation::DuplicateNonterminal(n.name.clone()));
            }
            if n.dimension == 0 {
                out.push(Violation::ZeroDimension(n.name.clone()));
            }
        }
        match self.dimension(&self.start) {
            None => out.push(Violation::UnknownStart(self.start.clone())),
            Some(1) => {}
            Some(found) => out.push(Violation::StartDimension { found }),
        }
        let terminals: BTreeSet<&String> = self.terminals.iter().collect();
        for (i, r) in self.rules.iter().enumerate() {
            let lhs = self.dimension(&r.lhs);
            if lhs.is_none() {
                out.push(Violation::UnknownNonterminal {
                    rule: i,
                    name: r.lhs.clone(),
                });
            }
            let mut arity = 0;
            for b in &r.rhs {
                match self.dimension(b) {
                    Some(d) => arity += d,
                    None => out.push(Violation::UnknownNonterminal {
                        rule: i,
                        name: b.clone(),
                    }),
                }
            }
            if r.rewriting.arity != arity {
                out.push(Violation::ArityMismatch {
                    rule: i,
                    expected: arity,
                    found: r.rewriting.arity,
                });
            }
            if let Some(d) = lhs {
                if d != r.rewriting.out_dimension() {
                    out.push(Violation::DimensionMismatch {
                        rule: i,
                        expected: d,
                        found: r.rewriting.out_dimension(),
                    });
                }
            }
            if !r.rewriting.is_linear() {
                out.push(Violation::NonLinear { rule: i });
            }
            for t in r.rewriting.components.iter().flatten() {
                match t {
                    Token::Terminal(a) if !terminals.contains(a) => {
                        out.push(Violation::UnknownTerminal {
                            rule: i,
                            name: a.clone(),
                        })
                    }
                    Token::Var(v) if *v >= r.rewriting.arity => {
                        out.push(Violation::VariableOutOfRange { rule: i, var: *v })
                    }
                    _ => {}
                }
            }
        }
        out
    }

    pub fn is_deleting(&self) -> bool {
        self.rules.iter().any(|r| r.rewriting.is_deleting())
    }

    /// Largest nonterminal dimension.
    pub fn grammar_k(&self) -> usize {
        self.nonterminals
            .iter()
            .map(|n| n.dimension)
            .max()
            .unwrap_or(0)
    }

    /// Least fixed point of the derivation clauses for every nonterminal,
    /// keeping tuples of total length at most `max_total_length`.
    pub fn saturate(&self, max_total_length: usize) -> BTreeMap<String, BTreeSet<Tuple>> {
        let mut sets: HashMap<&str, BTreeSet<Tuple>> = self
            .nonterminals
            .iter()
            .map(|n| (n.name.as_str(), BTreeSet::new()))
            .collect();
        loop {
            let mut changed = false;
            for r in &self.rules {
                let mut found = Vec::new();
                let mut args: Vec<&Tuple> = Vec::with_capacity(r.rhs.len());
                combine(&sets, r, 0, &mut args, max_total_length, &mut found);
                let target = sets.get_mut(r.lhs.as_str()).expect("validated grammar");
                for t in found {
                    changed |= target.insert(t);
                }
            }
            if !changed {
                break;
            }
        }
        sets.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }

    pub fn derivable_tuples(
        &self,
        nonterminal: &str,
        max_total_length: usize,
    ) -> Result<BTreeSet<Tuple>, McfgError> {
        if self.dimension(nonterminal).is_none() {
            return Err(McfgError::UnknownNonterminal(nonterminal.to_string()));
        }
        Ok(self
            .saturate(max_total_length)
            .remove(nonterminal)
            .unwrap_or_default())
    }

    pub fn membership(&self, w: &[String]) -> Result<Membership, McfgError> {
        let violations = self.validate();
        if let Some(v) = violations.first() {
            return Err(McfgError::Invalid(v.to_string()));
        }
        let tuples = self.derivable_tuples(&self.start, w.len())?;
        Ok(Membership {
            accepted: tuples.contains(&vec![w.to_vec()]),
            deleting_warning: self.is_deleting(),
        })
    }

    /// `S → f(A)`, `f(x₁, x₂) = x₁x₂`; `A → g(A)`, `g(x₁, x₂) = (a x₁ b, x₂ c)`; `A → (ε, ε)`.
    pub fn anbncn() -> Grammar {
        Grammar {
            terminals: vec!["a".into(), "b".into(), "c".into()],
            nonterminals: vec![
                Nonterminal {
                    name: "S".into(),
                    dimension: 1,
                },
                Nonterminal {
                    name: "A".into(),
                    dimension: 2,
                },
            ],
            start: "S".into(),
            rules: vec![
                Rule {
                    lhs: "S".into(),
                    rhs: vec!["A".into()],
                    rewriting: LinearRewriting::parse(2, &["x1 x2"]),
                },
                Rule {
                    lhs: "A".into(),
                    rhs: vec!["A".into()],
                    rewriting: LinearRewriting::parse(2, &["a x1 b", "x2 c"]),
                },
                Rule {
                    lhs: "A".into(),
                    rhs: vec![],
                    rewriting: LinearRewriting::parse(0, &["", ""]),
                },
            ],
        }
    }
}

fn combine<'a>(
    sets: &'a HashMap<&str, BTreeSet<Tuple>>,
    rule: &Rule,
    i: usize,
    args: &mut Vec<&'a Tuple>,
    cap: usize,
    out: &mut Vec<Tuple>,
) {
    if i == rule.rhs.len() {
        let flat: Vec<Word> = args.iter().flat_map(|t| t.iter().cloned()).collect();
        if let Ok(t) = apply_rewriting(&rule.rewriting, &flat) {
            if t.iter().map(Vec::len).sum::<usize>() <= cap {
                out.push(t);
            }
        }
        return;
    }
    for t in &sets[rule.rhs[i].as_str()] {
        args.push(t);
        combine(sets, rule, i + 1, args, cap, out);
        args.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn rewriting_examples() {
        let f = LinearRewriting::parse(2, &["x1 a x2"]);
        assert_eq!(
            apply_rewriting(&f, &[w("b"), w("c")]).unwrap(),
            vec![w("bac")]
        );
        let c = LinearRewriting::parse(0, &["a b"]);
        assert_eq!(apply_rewriting(&c, &[]).unwrap(), vec![w("ab")]);
        let g = LinearRewriting::parse(2, &["a x1 b", "x2 c"]);
        assert_eq!(
            apply_rewriting(&g, &[w(""), w("")]).unwrap(),
            vec![w("ab"), w("c")]
        );
        assert!(matches!(
            apply_rewriting(&g, &[w("")]),
            Err(McfgError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn validation() {
        let g = Grammar::anbncn();
        assert!(g.validate().is_empty());
        let mut bad = g.clone();
        bad.nonterminals[0].dimension = 2;
        assert!(bad
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::StartDimension { .. })));
        assert!(bad.validate()[0].to_string().starts_with("start dimension"));
        let mut twice = g.clone();
        twice.rules[1].rewriting = LinearRewriting::parse(2, &["a x1 b", "x1 c"]);
        assert!(twice
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::NonLinear { .. })));
    }

    #[test]
    fn saturation_examples() {
        let g = Grammar::anbncn();
        let a = g.derivable_tuples("A", 4).unwrap();
        let expected: BTreeSet<Tuple> = [vec![w(""), w("")], vec![w("ab"), w("c")]]
            .into_iter()
            .collect();
        assert_eq!(a, expected);
        // (aabb, cc) has total length 6
        let a = g.derivable_tuples("A", 6).unwrap();
        assert!(a.contains(&vec![w("aabb"), w("cc")]));
        assert_eq!(a.len(), 3);
        let s = g.derivable_tuples("S", 6).unwrap();
        let expected: BTreeSet<Tuple> = [vec![w("")], vec![w("abc")], vec![w("aabbcc")]]
            .into_iter()
            .collect();
        assert_eq!(s, expected);
        assert_eq!(g.derivable_tuples("S", 0).unwrap().len(), 1);
        assert_eq!(g.grammar_k(), 2);
    }

    #[test]
    fn membership_examples() {
        let g = Grammar::anbncn();
        assert!(g.membership(&w("aabbcc")).unwrap().accepted);
        assert!(!g.membership(&w("aabc")).unwrap().accepted);
        assert!(g.membership(&[]).unwrap().accepted);
        assert!(!g.membership(&w("aabbcc")).unwrap().deleting_warning);
    }

    #[test]
    fn deleting_rules_raise_the_warning() {
        let mut g = Grammar::anbncn();
        g.rules[0].rewriting = LinearRewriting::parse(2, &["x1"]);
        assert!(g.membership(&w("ab")).unwrap().deleting_warning);
    }
}
