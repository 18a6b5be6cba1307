//! JSON documents for automata, group specs and grammars.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::{
    Automaton, AutomatonError, Instruction, Predicate, StorageKind, StoreLabel, Transition,
};
use crate::mcfg::{Grammar, LinearRewriting, Nonterminal, Rule, Token};
use crate::oracle::{
    EdgeGroup, FiniteGroup, GraphEdge, GraphSpec, GraphVertex, GroupError, GroupSpec,
};
use crate::tree_stack::Label;
use crate::ROOT_NAME;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("syntax: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {reason}")]
    Invalid { path: String, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

fn invalid(path: impl Into<String>, reason: impl Into<String>) -> DocumentError {
    DocumentError::Invalid {
        path: path.into(),
        reason: reason.into(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDoc {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree_alphabet: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stack_alphabet: Option<Vec<String>>,
    pub initial: String,
    pub finals: Vec<String>,
    pub transitions: Vec<TransitionDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub from: String,
    pub read: Option<String>,
    pub pred: PredicateDoc,
    pub instr: InstructionDoc,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstructionDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl AutomatonDoc {
    pub fn from_automaton(m: &Automaton) -> Self {
        let label = |l: &StoreLabel| m.label_name(l);
        let sym = |s: &u32| m.symbols[*s as usize].clone();
        let transitions = m
            .transitions
            .iter()
            .map(|t| {
                let pred = match &t.predicate {
                    Predicate::Any => PredicateDoc {
                        kind: "any".into(),
                        labels: vec![],
                    },
                    Predicate::Equals(l) => PredicateDoc {
                        kind: "equals".into(),
                        labels: vec![label(l)],
                    },
                    Predicate::NotEquals(set) => PredicateDoc {
                        kind: "notequals".into(),
                        labels: set.iter().map(label).collect(),
                    },
                };
                let (kind, branch, lab) = match &t.instruction {
                    Instruction::Id => ("id", None, None),
                    Instruction::Push { branch, label } => {
                        ("push", Some(*branch), Some(sym(label)))
                    }
                    Instruction::Up(b) => ("up", Some(*b), None),
                    Instruction::Down => ("down", None, None),
                    Instruction::Set(s) => ("set", None, Some(sym(s))),
                    Instruction::PdPush(s) => ("pd_push", None, Some(sym(s))),
                    Instruction::PdPop(s) => ("pd_pop", None, Some(sym(s))),
                };
                TransitionDoc {
                    from: m.states[t.from].clone(),
                    read: t.read.map(|a| m.alphabet[a].clone()),
                    pred,
                    instr: InstructionDoc {
                        kind: kind.into(),
                        branch,
                        label: lab,
                    },
                    to: m.states[t.to].clone(),
                }
            })
            .collect();
        AutomatonDoc {
            states: m.states.clone(),
            alphabet: m.alphabet.clone(),
            tree_alphabet: (m.storage == StorageKind::TreeStack).then(|| m.symbols.clone()),
            stack_alphabet: (m.storage == StorageKind::Pushdown).then(|| m.symbols.clone()),
            initial: m.states[m.initial].clone(),
            finals: m.finals.iter().map(|&q| m.states[q].clone()).collect(),
            transitions,
        }
    }

    pub fn to_automaton(&self) -> Result<Automaton, DocumentError> {
        let (storage, symbols) = match (&self.tree_alphabet, &self.stack_alphabet) {
            (Some(_), Some(_)) => {
                return Err(invalid(
                    "$",
                    "both `tree_alphabet` and `stack_alphabet` given",
                ));
            }
            (Some(t), None) => (StorageKind::TreeStack, t.clone()),
            (None, Some(s)) => (StorageKind::Pushdown, s.clone()),
            (None, None) => (StorageKind::Trivial, vec![]),
        };
        let sym_field = match storage {
            StorageKind::Pushdown => "stack_alphabet",
            _ => "tree_alphabet",
        };
        let states = index(&self.states, "$.states")?;
        let letters = index(&self.alphabet, "$.alphabet")?;
        let syms = index(&symbols, &format!("$.{sym_field}"))?;
        if let Some(i) = symbols.iter().position(|s| s == ROOT_NAME) {
            return Err(invalid(
                format!("$.{sym_field}[{i}]"),
                format!("`{ROOT_NAME}` is reserved for the root"),
            ));
        }
        let state = |name: &str, path: String| {
            states
                .get(name)
                .copied()
                .ok_or_else(|| invalid(path, format!("unknown state `{name}`")))
        };
        let symbol = |name: &str, path: String| {
            syms.get(name)
                .map(|&s| s as u32)
                .ok_or_else(|| invalid(path, format!("unknown storage symbol `{name}`")))
        };
        let label = |name: &str, path: String| -> Result<StoreLabel, DocumentError> {
            if name == ROOT_NAME {
                Ok(Label::Root)
            } else {
                symbol(name, path).map(Label::Sym)
            }
        };
        let initial = state(&self.initial, "$.initial".into())?;
        let mut finals = BTreeSet::new();
        for (i, f) in self.finals.iter().enumerate() {
            finals.insert(state(f, format!("$.finals[{i}]"))?);
        }
        let mut transitions = Vec::with_capacity(self.transitions.len());
        for (i, t) in self.transitions.iter().enumerate() {
            let p = format!("$.transitions[{i}]");
            let read = match &t.read {
                None => None,
                Some(a) => Some(*letters.get(a.as_str()).ok_or_else(|| {
                    invalid(format!("{p}.read"), format!("unknown letter `{a}`"))
                })?),
            };
            let labels = |n: usize| -> Result<Vec<StoreLabel>, DocumentError> {
                if n != usize::MAX && t.pred.labels.len() != n {
                    return Err(invalid(
                        format!("{p}.pred.labels"),
                        format!("`{}` takes {n} label(s)", t.pred.kind),
                    ));
                }
                t.pred
                    .labels
                    .iter()
                    .enumerate()
                    .map(|(j, l)| label(l, format!("{p}.pred.labels[{j}]")))
                    .collect()
            };
            let predicate = match t.pred.kind.as_str() {
                "any" => {
                    labels(0)?;
                    Predicate::Any
                }
                "equals" => Predicate::Equals(labels(1)?[0]),
                "notequals" => Predicate::not_equals(labels(usize::MAX)?),
                k => {
                    return Err(invalid(
                        format!("{p}.pred.kind"),
                        format!("unknown predicate `{k}`"),
                    ))
                }
            };
            let ip = format!("{p}.instr");
            let branch = || {
                t.instr.branch.ok_or_else(|| {
                    invalid(
                        format!("{ip}.branch"),
                        format!("`{}` needs a branch", t.instr.kind),
                    )
                })
            };
            let lab = || {
                let name = t.instr.label.as_deref().ok_or_else(|| {
                    invalid(
                        format!("{ip}.label"),
                        format!("`{}` needs a label", t.instr.kind),
                    )
                })?;
                symbol(name, format!("{ip}.label"))
            };
            let instruction = match t.instr.kind.as_str() {
                "id" => Instruction::Id,
                "push" => Instruction::Push {
                    branch: branch()?,
                    label: lab()?,
                },
                "up" => Instruction::Up(branch()?),
                "down" => Instruction::Down,
                "set" => Instruction::Set(lab()?),
                "pd_push" => Instruction::PdPush(lab()?),
                "pd_pop" => Instruction::PdPop(lab()?),
                k => {
                    return Err(invalid(
                        format!("{ip}.kind"),
                        format!("unknown instruction `{k}`"),
                    ))
                }
            };
            transitions.push(Transition {
                from: state(&t.from, format!("{p}.from"))?,
                read,
                predicate,
                instruction,
                to: state(&t.to, format!("{p}.to"))?,
            });
        }
        let m = Automaton {
            storage,
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            symbols,
            initial,
            finals,
            transitions,
        };
        m.validate()?;
        Ok(m)
    }
}

fn index<'a>(names: &'a [String], path: &str) -> Result<HashMap<&'a str, usize>, DocumentError> {
    let mut map = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if map.insert(n.as_str(), i).is_some() {
            return Err(invalid(
                format!("{path}[{i}]"),
                format!("duplicate name `{n}`"),
            ));
        }
    }
    Ok(map)
}

pub fn automaton_to_json(m: &Automaton) -> String {
    serde_json::to_string_pretty(&AutomatonDoc::from_automaton(m)).expect("automaton serializes")
}

pub fn automaton_from_json(text: &str) -> Result<Automaton, DocumentError> {
    serde_json::from_str::<AutomatonDoc>(text)?.to_automaton()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDoc {
    Finite {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
        generators: Vec<GeneratorDoc>,
    },
    Integers {
        generator: String,
        inverse: String,
    },
    FreeProduct {
        left: Box<GroupDoc>,
        right: Box<GroupDoc>,
    },
    Amalgam {
        left: Box<GroupDoc>,
        right: Box<GroupDoc>,
        edge: EdgeDoc,
    },
    Hnn {
        base: Box<GroupDoc>,
        edge: EdgeDoc,
        stable: String,
        inverse: String,
    },
    Graph {
        vertices: Vec<VertexDoc>,
        edges: Vec<GraphEdgeDoc>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub letter: String,
    pub element: String,
}

/// A finite edge group `H` with representative words on both sides. `phi`
/// pairs each element of `H` with a name used as key in `right_reps`; when
/// absent the names coincide.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
    pub left_reps: BTreeMap<String, Vec<String>>,
    pub right_reps: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<(String, String)>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub name: String,
    pub group: GroupDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphEdgeDoc {
    pub id: String,
    pub from: String,
    pub to: String,
    pub edge: EdgeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<String>,
}

fn table_names(elements: &[String], table: &[Vec<usize>]) -> Vec<Vec<String>> {
    table
        .iter()
        .map(|row| row.iter().map(|&x| elements[x].clone()).collect())
        .collect()
}

fn table_ids(
    elements: &[String],
    table: &[Vec<String>],
    path: &str,
) -> Result<Vec<Vec<usize>>, DocumentError> {
    let ids = index(elements, &format!("{path}.elements"))?;
    table
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    ids.get(x.as_str()).copied().ok_or_else(|| {
                        invalid(
                            format!("{path}.table[{i}][{j}]"),
                            format!("unknown element `{x}`"),
                        )
                    })
                })
                .collect()
        })
        .collect()
}

fn finite_group(
    elements: &[String],
    table: &[Vec<String>],
    path: &str,
) -> Result<FiniteGroup, DocumentError> {
    let t = table_ids(elements, table, path)?;
    Ok(FiniteGroup::new_at(elements.to_vec(), t, path)?)
}

impl EdgeDoc {
    fn from_edge(e: &EdgeGroup) -> Self {
        let g = &e.group;
        let reps = |r: &[Vec<String>]| g.elements.iter().cloned().zip(r.iter().cloned()).collect();
        EdgeDoc {
            elements: g.elements.clone(),
            table: table_names(&g.elements, &g.table),
            left_reps: reps(&e.source_reps),
            right_reps: reps(&e.target_reps),
            phi: None,
        }
    }

    fn to_edge(&self, path: &str) -> Result<EdgeGroup, DocumentError> {
        let group = finite_group(&self.elements, &self.table, path)?;
        let bad = |p: String, reason: String| {
            DocumentError::Group(GroupError::BadSubgroupData { path: p, reason })
        };
        let phi: HashMap<&str, &str> = match &self.phi {
            None => self
                .elements
                .iter()
                .map(|h| (h.as_str(), h.as_str()))
                .collect(),
            Some(pairs) => {
                let mut map = HashMap::new();
                let mut images = BTreeSet::new();
                for (i, (h, k)) in pairs.iter().enumerate() {
                    if group.element(h).is_none() {
                        return Err(bad(
                            format!("{path}.phi[{i}]"),
                            format!("unknown element `{h}`"),
                        ));
                    }
                    if map.insert(h.as_str(), k.as_str()).is_some() || !images.insert(k.as_str()) {
                        return Err(bad(
                            format!("{path}.phi[{i}]"),
                            "phi is not a bijection".into(),
                        ));
                    }
                }
                if let Some(h) = self.elements.iter().find(|h| !map.contains_key(h.as_str())) {
                    return Err(bad(format!("{path}.phi"), format!("no image for `{h}`")));
                }
                map
            }
        };
        let mut source_reps = Vec::new();
        let mut target_reps = Vec::new();
        for h in &self.elements {
            let l = self
                .left_reps
                .get(h)
                .ok_or_else(|| bad(format!("{path}.left_reps"), format!("no word for `{h}`")))?;
            let image = phi[h.as_str()];
            let r = self.right_reps.get(image).ok_or_else(|| {
                bad(
                    format!("{path}.right_reps"),
                    format!("no word for `{image}`"),
                )
            })?;
            source_reps.push(l.clone());
            target_reps.push(r.clone());
        }
        for (side, reps, known) in [
            (
                "left_reps",
                &self.left_reps,
                self.elements
                    .iter()
                    .map(String::as_str)
                    .collect::<BTreeSet<_>>(),
            ),
            (
                "right_reps",
                &self.right_reps,
                phi.values().copied().collect(),
            ),
        ] {
            if let Some(k) = reps.keys().find(|k| !known.contains(k.as_str())) {
                return Err(bad(
                    format!("{path}.{side}.{k}"),
                    format!("unknown element `{k}`"),
                ));
            }
        }
        Ok(EdgeGroup {
            group,
            source_reps,
            target_reps,
        })
    }
}

impl GroupDoc {
    pub fn from_spec(spec: &GroupSpec) -> Self {
        match spec {
            GroupSpec::Finite { group, generators } => GroupDoc::Finite {
                elements: group.elements.clone(),
                table: table_names(&group.elements, &group.table),
                generators: generators
                    .iter()
                    .map(|(a, g)| GeneratorDoc {
                        letter: a.clone(),
                        element: group.elements[*g].clone(),
                    })
                    .collect(),
            },
            GroupSpec::Integers { up, down } => GroupDoc::Integers {
                generator: up.clone(),
                inverse: down.clone(),
            },
            GroupSpec::FreeProduct(l, r) => GroupDoc::FreeProduct {
                left: Box::new(Self::from_spec(l)),
                right: Box::new(Self::from_spec(r)),
            },
            GroupSpec::Amalgam(l, r, e) => GroupDoc::Amalgam {
                left: Box::new(Self::from_spec(l)),
                right: Box::new(Self::from_spec(r)),
                edge: EdgeDoc::from_edge(e),
            },
            GroupSpec::Hnn {
                base,
                edge,
                t,
                t_inv,
            } => GroupDoc::Hnn {
                base: Box::new(Self::from_spec(base)),
                edge: EdgeDoc::from_edge(edge),
                stable: t.clone(),
                inverse: t_inv.clone(),
            },
            GroupSpec::Graph(g) => GroupDoc::Graph {
                vertices: g
                    .vertices
                    .iter()
                    .map(|v| VertexDoc {
                        name: v.name.clone(),
                        group: Self::from_spec(&v.group),
                    })
                    .collect(),
                edges: g
                    .edges
                    .iter()
                    .map(|e| GraphEdgeDoc {
                        id: e.id.clone(),
                        from: e.from.clone(),
                        to: e.to.clone(),
                        edge: EdgeDoc::from_edge(&e.edge),
                        stable: e.stable.as_ref().map(|s| s.0.clone()),
                        inverse: e.stable.as_ref().map(|s| s.1.clone()),
                    })
                    .collect(),
            },
        }
    }

    /// Converts without the semantic checks of [`GroupSpec::validate`], apart
    /// from the group axioms of every table.
    pub fn to_spec_at(&self, path: &str) -> Result<GroupSpec, DocumentError> {
        Ok(match self {
            GroupDoc::Finite {
                elements,
                table,
                generators,
            } => {
                let group = finite_group(elements, table, path)?;
                let mut gens = Vec::new();
                for (i, g) in generators.iter().enumerate() {
                    let e = group.element(&g.element).ok_or_else(|| {
                        invalid(
                            format!("{path}.generators[{i}].element"),
                            format!("unknown element `{}`", g.element),
                        )
                    })?;
                    gens.push((g.letter.clone(), e));
                }
                GroupSpec::Finite {
                    group,
                    generators: gens,
                }
            }
            GroupDoc::Integers { generator, inverse } => GroupSpec::integers(generator, inverse),
            GroupDoc::FreeProduct { left, right } => GroupSpec::free_product(
                left.to_spec_at(&format!("{path}.left"))?,
                right.to_spec_at(&format!("{path}.right"))?,
            ),
            GroupDoc::Amalgam { left, right, edge } => GroupSpec::amalgam(
                left.to_spec_at(&format!("{path}.left"))?,
                right.to_spec_at(&format!("{path}.right"))?,
                edge.to_edge(&format!("{path}.edge"))?,
            ),
            GroupDoc::Hnn {
                base,
                edge,
                stable,
                inverse,
            } => GroupSpec::hnn(
                base.to_spec_at(&format!("{path}.base"))?,
                edge.to_edge(&format!("{path}.edge"))?,
                stable,
                inverse,
            ),
            GroupDoc::Graph { vertices, edges } => {
                let mut vs = Vec::new();
                for (i, v) in vertices.iter().enumerate() {
                    vs.push(GraphVertex {
                        name: v.name.clone(),
                        group: v.group.to_spec_at(&format!("{path}.vertices[{i}].group"))?,
                    });
                }
                let mut es = Vec::new();
                for (i, e) in edges.iter().enumerate() {
                    let p = format!("{path}.edges[{i}]");
                    let stable = match (&e.stable, &e.inverse) {
                        (Some(t), Some(u)) => Some((t.clone(), u.clone())),
                        (None, None) => None,
                        _ => {
                            return Err(invalid(p, "`stable` and `inverse` must be given together"))
                        }
                    };
                    es.push(GraphEdge {
                        id: e.id.clone(),
                        from: e.from.clone(),
                        to: e.to.clone(),
                        edge: e.edge.to_edge(&format!("{p}.edge"))?,
                        stable,
                    });
                }
                GroupSpec::Graph(GraphSpec {
                    vertices: vs,
                    edges: es,
                })
            }
        })
    }
}

pub fn group_spec_to_json(spec: &GroupSpec) -> String {
    serde_json::to_string_pretty(&GroupDoc::from_spec(spec)).expect("group spec serializes")
}

/// Parses and validates a group spec.
pub fn group_spec_from_json(text: &str) -> Result<GroupSpec, DocumentError> {
    let spec = serde_json::from_str::<GroupDoc>(text)?.to_spec_at("$")?;
    spec.validate()?;
    Ok(spec)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrammarDoc {
    pub terminals: Vec<String>,
    pub nonterminals: Vec<NonterminalDoc>,
    pub start: String,
    pub rules: Vec<RuleDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonterminalDoc {
    pub name: String,
    pub dimension: usize,
}

/// Components are whitespace-separated tokens; `x1`, `x2`, ... are the
/// components of the right-hand side, numbered left to right.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDoc {
    pub lhs: String,
    #[serde(default)]
    pub rhs: Vec<String>,
    pub components: Vec<String>,
}

impl GrammarDoc {
    pub fn from_grammar(g: &Grammar) -> Self {
        GrammarDoc {
            terminals: g.terminals.clone(),
            nonterminals: g
                .nonterminals
                .iter()
                .map(|n| NonterminalDoc {
                    name: n.name.clone(),
                    dimension: n.dimension,
                })
                .collect(),
            start: g.start.clone(),
            rules: g
                .rules
                .iter()
                .map(|r| RuleDoc {
                    lhs: r.lhs.clone(),
                    rhs: r.rhs.clone(),
                    components: r
                        .rewriting
                        .components
                        .iter()
                        .map(|c| {
                            c.iter()
                                .map(|t| match t {
                                    Token::Terminal(a) => a.clone(),
                                    Token::Var(i) => format!("x{}", i + 1),
                                })
                                .collect::<Vec<_>>()
                                .join(" ")
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// The arity of each rewriting is the summed dimension of its right-hand
    /// side; unknown nonterminals count as zero and are left to
    /// [`Grammar::validate`].
    pub fn to_grammar(&self) -> Grammar {
        let dims: HashMap<&str, usize> = self
            .nonterminals
            .iter()
            .map(|n| (n.name.as_str(), n.dimension))
            .collect();
        Grammar {
            terminals: self.terminals.clone(),
            nonterminals: self
                .nonterminals
                .iter()
                .map(|n| Nonterminal {
                    name: n.name.clone(),
                    dimension: n.dimension,
                })
                .collect(),
            start: self.start.clone(),
            rules: self
                .rules
                .iter()
                .map(|r| {
                    let arity = r
                        .rhs
                        .iter()
                        .map(|b| dims.get(b.as_str()).copied().unwrap_or(0))
                        .sum();
                    let comps: Vec<&str> = r.components.iter().map(String::as_str).collect();
                    Rule {
                        lhs: r.lhs.clone(),
                        rhs: r.rhs.clone(),
                        rewriting: LinearRewriting::parse(arity, &comps),
                    }
                })
                .collect(),
        }
    }
}

pub fn grammar_to_json(g: &Grammar) -> String {
    serde_json::to_string_pretty(&GrammarDoc::from_grammar(g)).expect("grammar serializes")
}

/// Parses a grammar and reports every validation violation at once.
pub fn grammar_from_json(text: &str) -> Result<Grammar, DocumentError> {
    let g = serde_json::from_str::<GrammarDoc>(text)?.to_grammar();
    let violations = g.validate();
    if violations.is_empty() {
        Ok(g)
    } else {
        Err(invalid(
            "$.rules",
            violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::z_word_problem_automaton;
    use crate::oracle::EdgeGroup;

    #[test]
    fn automaton_round_trip() {
        let m = z_word_problem_automaton();
        let text = automaton_to_json(&m);
        assert_eq!(automaton_from_json(&text).unwrap(), m);
        assert!(text.contains("\"tree_alphabet\""));
        assert!(text.contains(ROOT_NAME));
    }

    #[test]
    fn malformed_field_is_named() {
        let m = z_word_problem_automaton();
        let text =
            automaton_to_json(&m).replacen("\"initial\": \"S\"", "\"initial\": \"nowhere\"", 1);
        let e = automaton_from_json(&text).unwrap_err().to_string();
        assert!(e.contains("$.initial"), "{e}");
        let e = automaton_from_json("{\"states\": []}")
            .unwrap_err()
            .to_string();
        assert!(e.contains("alphabet"), "{e}");
    }

    #[test]
    fn group_round_trip() {
        let z4 = GroupSpec::cyclic(4, "a");
        let z4b = GroupSpec::cyclic(4, "b");
        let h = FiniteGroup::cyclic(2, "h");
        let w = |s: &str| s.chars().map(|c| c.to_string()).collect::<Vec<_>>();
        let edge = EdgeGroup {
            group: h,
            source_reps: vec![vec![], w("aa")],
            target_reps: vec![vec![], w("bb")],
        };
        let spec = GroupSpec::amalgam(z4, z4b, edge);
        let back = group_spec_from_json(&group_spec_to_json(&spec)).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn bad_table_has_path() {
        let text = r#"{"kind": "free_product",
            "left": {"kind": "integers", "generator": "a", "inverse": "A"},
            "right": {"kind": "finite", "elements": ["e", "x"],
                      "table": [["e", "x"], ["x", "x"]], "generators": []}}"#;
        match group_spec_from_json(text).unwrap_err() {
            DocumentError::Group(GroupError::NotAGroup { path, .. }) => {
                assert!(path.starts_with("$.right"), "{path}")
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn phi_reindexes_right_reps() {
        let text = r#"{"kind": "amalgam",
            "left": {"kind": "integers", "generator": "a", "inverse": "A"},
            "right": {"kind": "integers", "generator": "b", "inverse": "B"},
            "edge": {"elements": ["1"], "table": [["1"]],
                     "left_reps": {"1": []}, "right_reps": {"one": []},
                     "phi": [["1", "one"]]}}"#;
        let spec = group_spec_from_json(text).unwrap();
        assert!(spec.is_trivial(&["a".into(), "A".into()]));
    }

    #[test]
    fn grammar_round_trip() {
        let g = Grammar::anbncn();
        let back = grammar_from_json(&grammar_to_json(&g)).unwrap();
        assert_eq!(back, g);
    }
}
