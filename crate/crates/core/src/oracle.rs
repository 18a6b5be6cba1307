//! Word problems decided by normal forms, independent of any automaton.
//!
//! Leaves are finite groups given by a Cayley table and infinite cyclic
//! groups. Free products and amalgams are decided by syllable rewriting,
//! HNN extensions by Britton reduction, and graphs of groups by folding them
//! into nested amalgams and HNN extensions.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not-a-group at {path}: {reason}")]
    NotAGroup { path: String, reason: String },
    #[error("bad-subgroup-data at {path}: {reason}")]
    BadSubgroupData { path: String, reason: String },
    #[error("alphabet-overlap at {path}: letter `{letter}` is used twice")]
    AlphabetOverlap { path: String, letter: String },
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("bad graph at {path}: {reason}")]
    BadGraph { path: String, reason: String },
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Checks closure, associativity, identity and inverses.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::new_at(elements, table, "$")
    }

    pub fn new_at(
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        path: &str,
    ) -> Result<Self, GroupError> {
        let n = elements.len();
        let fail = |p: String, reason: String| GroupError::NotAGroup { path: p, reason };
        if n == 0 {
            return Err(fail(format!("{path}.elements"), "no elements".into()));
        }
        if table.len() != n {
            return Err(fail(
                format!("{path}.table"),
                format!("expected {n} rows, found {}", table.len()),
            ));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(fail(
                    format!("{path}.table[{i}]"),
                    "row has wrong length or unknown entry".into(),
                ));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| fail(format!("{path}.table"), "no identity element".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| {
                    fail(
                        format!("{path}.table[{x}]"),
                        format!("`{}` has no inverse", elements[x]),
                    )
                })?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(fail(
                            format!("{path}.table"),
                            format!(
                                "not associative at ({}, {}, {})",
                                elements[a], elements[b], elements[c]
                            ),
                        ));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            elements,
            table,
            identity,
            inverses,
        })
    }

    /// ℤ/n with elements named `e, g, g^2, ...` after `name`.
    pub fn cyclic(n: usize, name: &str) -> Self {
        let elements = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => name.to_string(),
                _ => format!("{name}^{i}"),
            })
            .collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::new(elements, table).expect("cyclic group table")
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1, "e")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }
}

/// A finite group `H` embedded in two groups by representative words: the
/// source embedding sends `h` to `source_reps[h]`, the target embedding to
/// `target_reps[h]`. The isomorphism between the two images is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGroup {
    pub group: FiniteGroup,
    pub source_reps: Vec<Vec<String>>,
    pub target_reps: Vec<Vec<String>>,
}

impl EdgeGroup {
    pub fn trivial() -> Self {
        EdgeGroup {
            group: FiniteGroup::trivial(),
            source_reps: vec![Vec::new()],
            target_reps: vec![Vec::new()],
        }
    }

    pub fn reps(&self, side: Side) -> &[Vec<String>] {
        match side {
            Side::Source => &self.source_reps,
            Side::Target => &self.target_reps,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Target,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Source => Side::Target,
            Side::Target => Side::Source,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub name: String,
    pub group: GroupSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub edge: EdgeGroup,
    /// Stable letter and its inverse; `None` for spanning-tree edges.
    pub stable: Option<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Finite {
        group: FiniteGroup,
        /// Generator letter and the element it denotes.
        generators: Vec<(String, usize)>,
    },
    /// ℤ with a generator and its inverse letter.
    Integers {
        up: String,
        down: String,
    },
    FreeProduct(Box<GroupSpec>, Box<GroupSpec>),
    /// Source reps are words of the left factor, target reps of the right.
    Amalgam(Box<GroupSpec>, Box<GroupSpec>, EdgeGroup),
    /// Source reps and target reps are both words of the base.
    Hnn {
        base: Box<GroupSpec>,
        edge: EdgeGroup,
        t: String,
        t_inv: String,
    },
    Graph(GraphSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexValue {
    Element(usize),
    Exponent(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syllable {
    /// 0 for the left factor, 1 for the right.
    pub factor: usize,
    pub word: Vec<String>,
}

/// Order in which rewrites are applied.
pub struct Rewriter {
    rng: Option<ChaCha8Rng>,
}

impl Rewriter {
    pub fn leftmost() -> Self {
        Rewriter { rng: None }
    }

    pub fn random(seed: u64) -> Self {
        Rewriter {
            rng: Some(ChaCha8Rng::seed_from_u64(seed)),
        }
    }

    fn pick(&mut self, n: usize) -> usize {
        match &mut self.rng {
            None => 0,
            Some(r) => r.gen_range(0..n),
        }
    }

    fn order(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        if let Some(r) = &mut self.rng {
            for i in (1..n).rev() {
                v.swap(i, r.gen_range(0..=i));
            }
        }
        v
    }
}

impl GroupSpec {
    pub fn integers(up: &str, down: &str) -> Self {
        GroupSpec::Integers {
            up: up.into(),
            down: down.into(),
        }
    }

    /// ℤ/n generated by `letter`.
    pub fn cyclic(n: usize, letter: &str) -> Self {
        GroupSpec::Finite {
            group: FiniteGroup::cyclic(n, letter),
            generators: vec![(letter.into(), 1 % n)],
        }
    }

    pub fn free_product(l: GroupSpec, r: GroupSpec) -> Self {
        GroupSpec::FreeProduct(Box::new(l), Box::new(r))
    }

    pub fn amalgam(l: GroupSpec, r: GroupSpec, edge: EdgeGroup) -> Self {
        GroupSpec::Amalgam(Box::new(l), Box::new(r), edge)
    }

    pub fn hnn(base: GroupSpec, edge: EdgeGroup, t: &str, t_inv: &str) -> Self {
        GroupSpec::Hnn {
            base: Box::new(base),
            edge,
            t: t.into(),
            t_inv: t_inv.into(),
        }
    }

    /// Generator letters in a fixed order.
    pub fn alphabet(&self) -> Vec<String> {
        match self {
            GroupSpec::Finite { generators, .. } => {
                generators.iter().map(|(a, _)| a.clone()).collect()
            }
            GroupSpec::Integers { up, down } => vec![up.clone(), down.clone()],
            GroupSpec::FreeProduct(l, r) | GroupSpec::Amalgam(l, r, _) => {
                let mut a = l.alphabet();
                a.extend(r.alphabet());
                a
            }
            GroupSpec::Hnn { base, t, t_inv, .. } => {
                let mut a = base.alphabet();
                a.push(t.clone());
                a.push(t_inv.clone());
                a
            }
            GroupSpec::Graph(g) => {
                let mut a: Vec<String> =
                    g.vertices.iter().flat_map(|v| v.group.alphabet()).collect();
                for e in &g.edges {
                    if let Some((t, ti)) = &e.stable {
                        a.push(t.clone());
                        a.push(ti.clone());
                    }
                }
                a
            }
        }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        self.validate_at("$")
    }

    pub fn validate_at(&self, path: &str) -> Result<(), GroupError> {
        let mut seen = BTreeSet::new();
        for a in self.alphabet() {
            if !seen.insert(a.clone()) {
                return Err(GroupError::AlphabetOverlap {
                    path: path.to_string(),
                    letter: a,
                });
            }
        }
        match self {
            GroupSpec::Finite { group, generators } => {
                for (i, (_, g)) in generators.iter().enumerate() {
                    if *g >= group.order() {
                        return Err(GroupError::NotAGroup {
                            path: format!("{path}.generators[{i}]"),
                            reason: "generator names no element".into(),
                        });
                    }
                }
                Ok(())
            }
            GroupSpec::Integers { .. } => Ok(()),
            GroupSpec::FreeProduct(l, r) => {
                l.validate_at(&format!("{path}.left"))?;
                r.validate_at(&format!("{path}.right"))
            }
            GroupSpec::Amalgam(l, r, edge) => {
                l.validate_at(&format!("{path}.left"))?;
                r.validate_at(&format!("{path}.right"))?;
                validate_edge(edge, l, r, &format!("{path}.edge"))
            }
            GroupSpec::Hnn { base, edge, .. } => {
                base.validate_at(&format!("{path}.base"))?;
                validate_edge(edge, base, base, &format!("{path}.edge"))
            }
            GroupSpec::Graph(g) => {
                for (i, v) in g.vertices.iter().enumerate() {
                    v.group
                        .validate_at(&format!("{path}.vertices[{i}].group"))?;
                }
                self.fold_graph_at(path)?.validate_at(path)
            }
        }
    }

    /// Rewrites a graph of groups as nested amalgams along the tree edges
    /// (taken in order of edge id) followed by HNN extensions along the
    /// remaining edges. Other specs are returned unchanged.
    pub fn fold_graph(&self) -> Result<GroupSpec, GroupError> {
        self.fold_graph_at("$")
    }

    fn fold_graph_at(&self, path: &str) -> Result<GroupSpec, GroupError> {
        let GroupSpec::Graph(g) = self else {
            return Ok(self.clone());
        };
        let bad = |reason: String| GroupError::BadGraph {
            path: path.to_string(),
            reason,
        };
        if g.vertices.is_empty() {
            return Err(bad("no vertices".into()));
        }
        let index: HashMap<&str, usize> = g
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.as_str(), i))
            .collect();
        if index.len() != g.vertices.len() {
            return Err(bad("duplicate vertex name".into()));
        }
        let mut order: Vec<usize> = (0..g.edges.len()).collect();
        order.sort_by(|&a, &b| g.edges[a].id.cmp(&g.edges[b].id));
        // component id per vertex, and the folded spec per component
        let mut comp: Vec<usize> = (0..g.vertices.len()).collect();
        let mut specs: Vec<Option<GroupSpec>> = g
            .vertices
            .iter()
            .map(|v| Some(v.group.fold_graph_at(path)).transpose())
            .collect::<Result<_, _>>()?;
        for &e in order.iter().filter(|&&e| g.edges[e].stable.is_none()) {
            let edge = &g.edges[e];
            let (Some(&a), Some(&b)) = (index.get(edge.from.as_str()), index.get(edge.to.as_str()))
            else {
                return Err(bad(format!("edge `{}` names an unknown vertex", edge.id)));
            };
            let (ca, cb) = (comp[a], comp[b]);
            if ca == cb {
                return Err(bad(format!("tree edge `{}` closes a cycle", edge.id)));
            }
            let left = specs[ca].take().expect("live component");
            let right = specs[cb].take().expect("live component");
            specs[ca] = Some(GroupSpec::amalgam(left, right, edge.edge.clone()));
            for c in comp.iter_mut() {
                if *c == cb {
                    *c = ca;
                }
            }
        }
        let root = comp[0];
        if comp.iter().any(|&c| c != root) {
            return Err(bad("tree edges do not span the graph".into()));
        }
        let mut spec = specs[root].take().expect("live component");
        for &e in order.iter().filter(|&&e| g.edges[e].stable.is_some()) {
            let edge = &g.edges[e];
            if !index.contains_key(edge.from.as_str()) || !index.contains_key(edge.to.as_str()) {
                return Err(bad(format!("edge `{}` names an unknown vertex", edge.id)));
            }
            let (t, ti) = edge.stable.clone().expect("stable edge");
            spec = GroupSpec::hnn(spec, edge.edge.clone(), &t, &ti);
        }
        Ok(spec)
    }

    /// Maps each letter to a word for its inverse.
    pub fn inverse_letters(&self) -> HashMap<String, Vec<String>> {
        let mut map = HashMap::new();
        self.collect_inverses(&mut map);
        map
    }

    fn collect_inverses(&self, map: &mut HashMap<String, Vec<String>>) {
        match self {
            GroupSpec::Finite { group, generators } => {
                for (a, g) in generators {
                    let inv = group.inverse(*g);
                    let word = match generators.iter().find(|(_, h)| *h == inv) {
                        Some((b, _)) => vec![b.clone()],
                        None => vec![a.clone(); group.element_order(*g) - 1],
                    };
                    map.insert(a.clone(), word);
                }
            }
            GroupSpec::Integers { up, down } => {
                map.insert(up.clone(), vec![down.clone()]);
                map.insert(down.clone(), vec![up.clone()]);
            }
            GroupSpec::FreeProduct(l, r) | GroupSpec::Amalgam(l, r, _) => {
                l.collect_inverses(map);
                r.collect_inverses(map);
            }
            GroupSpec::Hnn { base, t, t_inv, .. } => {
                base.collect_inverses(map);
                map.insert(t.clone(), vec![t_inv.clone()]);
                map.insert(t_inv.clone(), vec![t.clone()]);
            }
            GroupSpec::Graph(g) => {
                for v in &g.vertices {
                    v.group.collect_inverses(map);
                }
                for e in &g.edges {
                    if let Some((t, ti)) = &e.stable {
                        map.insert(t.clone(), vec![ti.clone()]);
                        map.insert(ti.clone(), vec![t.clone()]);
                    }
                }
            }
        }
    }

    /// The reversed word with every letter replaced by its inverse.
    pub fn formal_inverse(&self, w: &[String]) -> Vec<String> {
        let map = self.inverse_letters();
        w.iter()
            .rev()
            .flat_map(|a| map[a].iter().cloned())
            .collect()
    }

    /// Evaluates a word in a leaf group.
    pub fn eval_in_vertex_group(&self, w: &[String]) -> Result<VertexValue, GroupError> {
        match self {
            GroupSpec::Finite { group, generators } => {
                let mut x = group.identity();
                for a in w {
                    let g = generators
                        .iter()
                        .find(|(b, _)| b == a)
                        .ok_or_else(|| GroupError::UnknownLetter(a.clone()))?
                        .1;
                    x = group.mul(x, g);
                }
                Ok(VertexValue::Element(x))
            }
            GroupSpec::Integers { up, down } => {
                let mut n = 0i64;
                for a in w {
                    if a == up {
                        n += 1;
                    } else if a == down {
                        n -= 1;
                    } else {
                        return Err(GroupError::UnknownLetter(a.clone()));
                    }
                }
                Ok(VertexValue::Exponent(n))
            }
            _ => panic!("eval_in_vertex_group needs a finite or integer leaf"),
        }
    }

    /// Splits a word of a free product or amalgam into maximal single-factor runs.
    pub fn syllable_split(&self, w: &[String]) -> Vec<Syllable> {
        let (GroupSpec::FreeProduct(l, _) | GroupSpec::Amalgam(l, _, _)) = self else {
            return if w.is_empty() {
                Vec::new()
            } else {
                vec![Syllable {
                    factor: 0,
                    word: w.to_vec(),
                }]
            };
        };
        let left: BTreeSet<String> = l.alphabet().into_iter().collect();
        let mut out: Vec<Syllable> = Vec::new();
        for a in w {
            let factor = usize::from(!left.contains(a));
            match out.last_mut() {
                Some(s) if s.factor == factor => s.word.push(a.clone()),
                _ => out.push(Syllable {
                    factor,
                    word: vec![a.clone()],
                }),
            }
        }
        out
    }

    pub fn is_trivial(&self, w: &[String]) -> bool {
        self.is_trivial_with(w, &mut Rewriter::leftmost())
    }

    pub fn is_trivial_with(&self, w: &[String], rw: &mut Rewriter) -> bool {
        match self {
            GroupSpec::Finite { group, .. } => {
                self.eval_in_vertex_group(w).expect("letters of the group")
                    == VertexValue::Element(group.identity())
            }
            GroupSpec::Integers { .. } => {
                self.eval_in_vertex_group(w).expect("letters of the group")
                    == VertexValue::Exponent(0)
            }
            GroupSpec::FreeProduct(l, r) => amalgam_trivial(self, l, r, None, w, rw),
            GroupSpec::Amalgam(l, r, edge) => amalgam_trivial(self, l, r, Some(edge), w, rw),
            GroupSpec::Hnn {
                base,
                edge,
                t,
                t_inv,
            } => britton_trivial(base, edge, t, t_inv, w, rw),
            GroupSpec::Graph(_) => self
                .fold_graph()
                .expect("valid graph")
                .is_trivial_with(w, rw),
        }
    }
}

/// The element `h` of the edge group with `w =_G h`, if `w` lies in the image.
fn subgroup_element(
    g: &GroupSpec,
    edge: &EdgeGroup,
    side: Side,
    w: &[String],
    rw: &mut Rewriter,
) -> Option<usize> {
    let reps = edge.reps(side);
    (0..edge.group.order()).find(|&h| {
        let mut probe = w.to_vec();
        probe.extend(reps[edge.group.inverse(h)].iter().cloned());
        g.is_trivial_with(&probe, rw)
    })
}

fn amalgam_trivial(
    spec: &GroupSpec,
    l: &GroupSpec,
    r: &GroupSpec,
    edge: Option<&EdgeGroup>,
    w: &[String],
    rw: &mut Rewriter,
) -> bool {
    let factors = [l, r];
    let sides = [Side::Source, Side::Target];
    let mut syllables = spec.syllable_split(w);
    loop {
        // drop trivial syllables and merge neighbours until stable
        let mut changed = true;
        while changed {
            changed = false;
            let mut merged: Vec<Syllable> = Vec::with_capacity(syllables.len());
            for s in syllables.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.factor == s.factor => {
                        last.word.extend(s.word);
                        changed = true;
                    }
                    _ => merged.push(s),
                }
            }
            let before = merged.len();
            merged.retain(|s| !factors[s.factor].is_trivial_with(&s.word, rw));
            changed |= merged.len() != before;
            syllables = merged;
        }
        if syllables.len() <= 1 {
            // a lone syllable survived only because it is nontrivial
            return syllables.is_empty();
        }
        let Some(edge) = edge else {
            return false;
        };
        let measure = syllables.len();
        let mut replaced = false;
        for i in rw.order(syllables.len()) {
            let s = &syllables[i];
            let side = sides[s.factor];
            if let Some(h) = subgroup_element(factors[s.factor], edge, side, &s.word, rw) {
                syllables[i] = Syllable {
                    factor: 1 - s.factor,
                    word: edge.reps(side.other())[h].clone(),
                };
                replaced = true;
                break;
            }
        }
        if !replaced {
            return false;
        }
        // the replaced syllable merges into a neighbour on the next pass
        let mut check = syllables.clone();
        check.dedup_by(|b, a| a.factor == b.factor);
        debug_assert!(check.len() < measure);
    }
}

fn britton_trivial(
    base: &GroupSpec,
    edge: &EdgeGroup,
    t: &str,
    t_inv: &str,
    w: &[String],
    rw: &mut Rewriter,
) -> bool {
    // g0 s1 g1 s2 ... sn gn with s = true for t
    let mut segs: Vec<Vec<String>> = vec![Vec::new()];
    let mut stables: Vec<bool> = Vec::new();
    for a in w {
        if a == t || a == t_inv {
            stables.push(a == t);
            segs.push(Vec::new());
        } else {
            segs.last_mut().expect("segment").push(a.clone());
        }
    }
    loop {
        if stables.is_empty() {
            return base.is_trivial_with(&segs[0], rw);
        }
        let pinches: Vec<usize> = (0..stables.len() - 1)
            .filter(|&i| stables[i] != stables[i + 1])
            .collect();
        let mut done = None;
        let start = if pinches.is_empty() {
            0
        } else {
            rw.pick(pinches.len())
        };
        for k in 0..pinches.len() {
            let i = pinches[(start + k) % pinches.len()];
            // t g T with g in the source image, or T g t with g in the target image
            let side = if stables[i] {
                Side::Source
            } else {
                Side::Target
            };
            if let Some(h) = subgroup_element(base, edge, side, &segs[i + 1], rw) {
                done = Some((i, edge.reps(side.other())[h].clone()));
                break;
            }
        }
        let Some((i, rep)) = done else {
            return false;
        };
        let before = stables.len();
        let right = segs.remove(i + 2);
        segs.remove(i + 1);
        segs[i].extend(rep);
        segs[i].extend(right);
        stables.drain(i..i + 2);
        debug_assert!(stables.len() < before);
    }
}

/// All words of length at most `max_len` over `n` letters, shortest first and
/// lexicographic within a length.
pub fn enumerate_words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * n);
        for w in &layer {
            for a in 0..n {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Words over `alphabet` of length at most `max_len`, spelled out.
pub fn enumerate_named_words(alphabet: &[String], max_len: usize) -> Vec<Vec<String>> {
    enumerate_words(alphabet.len(), max_len)
        .into_iter()
        .map(|w| w.into_iter().map(|i| alphabet[i].clone()).collect())
        .collect()
}

fn validate_edge(
    edge: &EdgeGroup,
    source: &GroupSpec,
    target: &GroupSpec,
    path: &str,
) -> Result<(), GroupError> {
    let g = &edge.group;
    let bad = |reason: String| GroupError::BadSubgroupData {
        path: path.to_string(),
        reason,
    };
    FiniteGroup::new_at(g.elements.clone(), g.table.clone(), path)?;
    for (side, spec, name) in [
        (Side::Source, source, "source"),
        (Side::Target, target, "target"),
    ] {
        let reps = edge.reps(side);
        if reps.len() != g.order() {
            return Err(bad(format!(
                "{name} reps: expected {} words, found {}",
                g.order(),
                reps.len()
            )));
        }
        let letters: BTreeSet<String> = spec.alphabet().into_iter().collect();
        for (h, w) in reps.iter().enumerate() {
            if let Some(a) = w.iter().find(|a| !letters.contains(*a)) {
                return Err(bad(format!(
                    "{name} rep of `{}` uses unknown letter `{a}`",
                    g.elements[h]
                )));
            }
        }
        if !spec.is_trivial(&reps[g.identity()]) {
            return Err(bad(format!("{name} rep of the identity is not trivial")));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let mut w = reps[a].clone();
                w.extend(reps[b].iter().cloned());
                w.extend(reps[g.inverse(g.mul(a, b))].iter().cloned());
                if !spec.is_trivial(&w) {
                    return Err(bad(format!(
                        "{name} reps do not respect the product of `{}` and `{}`",
                        g.elements[a], g.elements[b]
                    )));
                }
                if a != b {
                    let mut w = reps[a].clone();
                    w.extend(reps[g.inverse(b)].iter().cloned());
                    if spec.is_trivial(&w) {
                        return Err(bad(format!(
                            "{name} reps of `{}` and `{}` coincide",
                            g.elements[a], g.elements[b]
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    pub(crate) fn z2_edge_on_z4() -> EdgeGroup {
        EdgeGroup {
            group: FiniteGroup::cyclic(2, "h"),
            source_reps: vec![vec![], w("aa")],
            target_reps: vec![vec![], w("bb")],
        }
    }

    #[test]
    fn leaves_evaluate() {
        let z4 = GroupSpec::cyclic(4, "a");
        assert_eq!(
            z4.eval_in_vertex_group(&w("aaa")).unwrap(),
            VertexValue::Element(3)
        );
        let z = GroupSpec::integers("t", "T");
        assert_eq!(
            z.eval_in_vertex_group(&w("ttT")).unwrap(),
            VertexValue::Exponent(1)
        );
        assert_eq!(
            z.eval_in_vertex_group(&[]).unwrap(),
            VertexValue::Exponent(0)
        );
        assert!(z.eval_in_vertex_group(&w("x")).is_err());
    }

    #[test]
    fn syllables() {
        let fp = GroupSpec::free_product(GroupSpec::cyclic(2, "a"), GroupSpec::cyclic(2, "b"));
        let s = fp.syllable_split(&w("aabba"));
        assert_eq!(
            s.iter().map(|s| s.word.concat()).collect::<Vec<_>>(),
            ["aa", "bb", "a"]
        );
        assert_eq!(fp.syllable_split(&w("aa")).len(), 1);
        assert!(fp.syllable_split(&[]).is_empty());
    }

    #[test]
    fn free_group_words() {
        let f2 =
            GroupSpec::free_product(GroupSpec::integers("a", "A"), GroupSpec::integers("b", "B"));
        assert!(f2.is_trivial(&w("aAbB")));
        assert!(!f2.is_trivial(&w("abAB")));
        assert!(f2.is_trivial(&w("abBA")));
        assert!(f2.is_trivial(&[]));
    }

    #[test]
    fn amalgam_words() {
        let g = GroupSpec::amalgam(
            GroupSpec::cyclic(4, "a"),
            GroupSpec::cyclic(4, "b"),
            z2_edge_on_z4(),
        );
        g.validate().unwrap();
        assert!(g.is_trivial(&w("aabb")));
        assert!(!g.is_trivial(&w("aab")));
        assert!(!g.is_trivial(&w("ab")));
        assert!(g.is_trivial(&w("abaabb")) == g.is_trivial(&w("abbbab")));
    }

    #[test]
    fn hnn_words() {
        let id = EdgeGroup {
            group: FiniteGroup::cyclic(2, "h"),
            source_reps: vec![vec![], w("a")],
            target_reps: vec![vec![], w("a")],
        };
        let g = GroupSpec::hnn(GroupSpec::cyclic(2, "a"), id, "t", "T");
        g.validate().unwrap();
        assert!(g.is_trivial(&w("taTa")));
        assert!(!g.is_trivial(&w("tta")));
        assert!(!g.is_trivial(&w("ta")));
        assert!(g.is_trivial(&w("tT")));
        let free = GroupSpec::hnn(GroupSpec::cyclic(2, "a"), EdgeGroup::trivial(), "t", "T");
        assert!(free.is_trivial(&w("aa")));
        assert!(!free.is_trivial(&w("taTa")));
    }

    #[test]
    fn bad_reps_are_rejected() {
        let mut edge = z2_edge_on_z4();
        edge.target_reps[1] = w("b");
        let g = GroupSpec::amalgam(GroupSpec::cyclic(4, "a"), GroupSpec::cyclic(4, "b"), edge);
        assert!(matches!(
            g.validate(),
            Err(GroupError::BadSubgroupData { .. })
        ));
    }

    #[test]
    fn non_group_tables_are_rejected() {
        let err = FiniteGroup::new(vec!["e".into(), "x".into()], vec![vec![0, 1], vec![1, 1]])
            .unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup { .. }));
    }

    #[test]
    fn overlapping_alphabets_are_rejected() {
        let g = GroupSpec::free_product(GroupSpec::cyclic(2, "a"), GroupSpec::cyclic(3, "a"));
        assert!(matches!(
            g.validate(),
            Err(GroupError::AlphabetOverlap { .. })
        ));
    }

    #[test]
    fn word_enumeration_order() {
        assert_eq!(enumerate_words(1, 2), vec![vec![], vec![0], vec![0, 0]]);
        assert_eq!(enumerate_words(2, 1), vec![vec![], vec![0], vec![1]]);
        assert_eq!(enumerate_words(2, 3).len(), 15);
    }

    #[test]
    fn formal_inverse_uses_declared_letters() {
        let f = GroupSpec::free_product(GroupSpec::integers("a", "A"), GroupSpec::cyclic(3, "b"));
        assert_eq!(f.formal_inverse(&w("ab")).concat(), "bbA");
    }
}
