//! Horn-clause satisfiability with minimal-model semantics.
//!
//! A Horn clause has at most one positive literal; the builder API and the
//! text-format parser can only express such clauses, so non-Horn input is
//! rejected at construction. [`minimal_model`] runs unit propagation with
//! per-clause unsatisfied-body counters, which is linear in the total
//! literal count and returns the unique least model, or `None` once `FALSE`
//! is derived.
//!
//! Text format, one clause per line (`#` starts a comment):
//!
//! ```text
//! -> a            # fact
//! a & b -> c      # definite rule
//! a -> FALSE      # goal clause
//! ```

pub mod cells;

pub use cells::{build_domain_rules, classify_cells, CellCatalogue, CellClass, CellId, OrbitMap};

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::Result;

pub type AtomId = u32;

/// Clause head: a single positive literal or `FALSE`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Head {
    Atom(AtomId),
    False,
}

/// A definite or goal clause; the body is stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornClause {
    body: Vec<AtomId>,
    head: Head,
}

impl HornClause {
    pub fn body(&self) -> &[AtomId] {
        &self.body
    }

    pub fn head(&self) -> Head {
        self.head
    }
}

/// A Horn formula over interned atoms.
#[derive(Debug, Clone, Default)]
pub struct HornFormula {
    names: Vec<String>,
    index: HashMap<String, AtomId>,
    clauses: Vec<HornClause>,
}

impl HornFormula {
    pub fn new() -> Self {
        HornFormula::default()
    }

    /// Interns an atom name and returns its id.
    pub fn atom(&mut self, name: &str) -> AtomId {
        debug_assert!(!name.is_empty(), "atom names must be nonempty");
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len() as AtomId;
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn atom_name(&self, id: AtomId) -> &str {
        &self.names[id as usize]
    }

    pub fn atom_count(&self) -> usize {
        self.names.len()
    }

    pub fn clauses(&self) -> &[HornClause] {
        &self.clauses
    }

    fn push_clause(&mut self, mut body: Vec<AtomId>, head: Head) {
        body.sort_unstable();
        body.dedup();
        self.clauses.push(HornClause { body, head });
    }

    pub fn add_fact(&mut self, head: AtomId) {
        self.push_clause(Vec::new(), Head::Atom(head));
    }

    pub fn add_rule(&mut self, body: &[AtomId], head: AtomId) {
        self.push_clause(body.to_vec(), Head::Atom(head));
    }

    pub fn add_goal(&mut self, body: &[AtomId]) {
        self.push_clause(body.to_vec(), Head::False);
    }

    /// Parses the line-based text format, rejecting non-Horn lines with
    /// their line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut formula = HornFormula::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let arrow = line.find("->").ok_or_else(|| Error::HornParse {
                line: line_no,
                message: "missing '->'".into(),
            })?;
            let (left, right_with_arrow) = line.split_at(arrow);
            let right = right_with_arrow[2..].trim();
            if right.contains("->") {
                return Err(Error::HornParse {
                    line: line_no,
                    message: "multiple '->' separators".into(),
                });
            }
            if right.contains('&') {
                return Err(Error::HornParse {
                    line: line_no,
                    message: "non-Horn clause: more than one positive literal".into(),
                });
            }
            let mut body = Vec::new();
            let left = left.trim();
            if !left.is_empty() {
                for token in left.split('&') {
                    let name = parse_atom(token, line_no)?;
                    if name == "FALSE" {
                        return Err(Error::HornParse {
                            line: line_no,
                            message: "FALSE is only allowed as a clause head".into(),
                        });
                    }
                    body.push(formula.atom(name));
                }
            }
            if right == "FALSE" {
                formula.add_goal(&body);
            } else {
                let name = parse_atom(right, line_no)?;
                let head = formula.atom(name);
                formula.push_clause(body, Head::Atom(head));
            }
        }
        Ok(formula)
    }
}

fn parse_atom(token: &str, line_no: usize) -> Result<&str> {
    let name = token.trim();
    if name.is_empty() {
        return Err(Error::HornParse { line: line_no, message: "empty atom".into() });
    }
    if name.chars().any(char::is_whitespace) || name.contains('&') {
        return Err(Error::HornParse {
            line: line_no,
            message: format!("invalid atom {name:?}"),
        });
    }
    Ok(name)
}

impl fmt::Display for HornFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for clause in &self.clauses {
            if !clause.body.is_empty() {
                let names: Vec<&str> = clause.body.iter().map(|&a| self.atom_name(a)).collect();
                write!(f, "{} ", names.join(" & "))?;
            }
            match clause.head {
                Head::Atom(a) => writeln!(f, "-> {}", self.atom_name(a))?,
                Head::False => writeln!(f, "-> FALSE")?,
            }
        }
        Ok(())
    }
}

/// The set of atoms true in the least model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    atoms: BTreeSet<AtomId>,
}

impl Model {
    pub fn contains(&self, id: AtomId) -> bool {
        self.atoms.contains(&id)
    }

    pub fn ids(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.atoms.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atom names sorted lexicographically, the CLI output order.
    pub fn sorted_names<'a>(&self, formula: &'a HornFormula) -> Vec<&'a str> {
        let mut names: Vec<&str> = self.ids().map(|id| formula.atom_name(id)).collect();
        names.sort_unstable();
        names
    }
}

/// Forward chaining to the unique least model; `None` means unsatisfiable
/// (`FALSE` was derived).
pub fn minimal_model(formula: &HornFormula) -> Option<Model> {
    let n = formula.atom_count();
    let mut waiting: Vec<u32> = Vec::with_capacity(formula.clauses.len());
    let mut watchers: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut truth = vec![false; n];
    let mut queue: Vec<AtomId> = Vec::new();

    for (ci, clause) in formula.clauses.iter().enumerate() {
        waiting.push(clause.body.len() as u32);
        if clause.body.is_empty() {
            match clause.head {
                Head::False => return None,
                Head::Atom(a) => {
                    if !truth[a as usize] {
                        truth[a as usize] = true;
                        queue.push(a);
                    }
                }
            }
        } else {
            for &a in &clause.body {
                watchers[a as usize].push(ci as u32);
            }
        }
    }

    while let Some(atom) = queue.pop() {
        for &watcher in &watchers[atom as usize] {
            let ci = watcher as usize;
            waiting[ci] -= 1;
            if waiting[ci] == 0 {
                match formula.clauses[ci].head {
                    Head::False => return None,
                    Head::Atom(a) => {
                        if !truth[a as usize] {
                            truth[a as usize] = true;
                            queue.push(a);
                        }
                    }
                }
            }
        }
    }

    let atoms = truth
        .iter()
        .enumerate()
        .filter(|(_, &t)| t)
        .map(|(i, _)| i as AtomId)
        .collect();
    Some(Model { atoms })
}

/// True iff the formula has a model.
pub fn satisfiable(formula: &HornFormula) -> bool {
    minimal_model(formula).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selftest::oracles;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn names(model: &Model, f: &HornFormula) -> Vec<String> {
        model.sorted_names(f).iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn fact_and_rule_derive() {
        let mut f = HornFormula::new();
        let a = f.atom("a");
        let b = f.atom("b");
        f.add_fact(a);
        f.add_rule(&[a], b);
        let m = minimal_model(&f).unwrap();
        assert_eq!(names(&m, &f), vec!["a", "b"]);
    }

    #[test]
    fn fact_with_goal_is_unsat() {
        let mut f = HornFormula::new();
        let a = f.atom("a");
        f.add_fact(a);
        f.add_goal(&[a]);
        assert!(minimal_model(&f).is_none());
        assert!(!satisfiable(&f));
    }

    #[test]
    fn chain_to_goal_is_unsat() {
        let mut f = HornFormula::new();
        let a = f.atom("a");
        let b = f.atom("b");
        let c = f.atom("c");
        f.add_fact(a);
        f.add_rule(&[a], b);
        f.add_rule(&[b], c);
        f.add_goal(&[c]);
        assert!(minimal_model(&f).is_none());
        let oracle = oracles::truth_table(&f);
        assert!(!oracle.satisfiable);
    }

    #[test]
    fn empty_formula_has_empty_model() {
        let f = HornFormula::new();
        let m = minimal_model(&f).unwrap();
        assert!(m.is_empty());
        assert!(satisfiable(&f));
    }

    #[test]
    fn empty_body_goal_is_unsat() {
        let mut f = HornFormula::new();
        f.add_goal(&[]);
        assert!(!satisfiable(&f));
    }

    #[test]
    fn duplicate_body_atoms_count_once() {
        let mut f = HornFormula::new();
        let a = f.atom("a");
        let b = f.atom("b");
        f.push_clause(vec![a, a], Head::Atom(b));
        f.add_fact(a);
        let m = minimal_model(&f).unwrap();
        assert!(m.contains(b));
    }

    #[test]
    fn random_formulas_match_truth_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..200 {
            let f = random_formula(&mut rng, 15, 20);
            let oracle = oracles::truth_table(&f);
            match minimal_model(&f) {
                Some(model) => {
                    assert!(oracle.satisfiable);
                    assert!(oracle.satisfies(&f, &model));
                    assert!(oracle.is_least(&f, &model));
                }
                None => assert!(!oracle.satisfiable),
            }
        }
    }

    #[test]
    fn model_is_independent_of_clause_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let base = random_formula(&mut rng, 12, 16);
        let reference = minimal_model(&base);
        let ref_names: Option<Vec<String>> = reference.as_ref().map(|m| names(m, &base));
        for _ in 0..100 {
            let mut clauses = base.clauses().to_vec();
            clauses.shuffle(&mut rng);
            let mut shuffled = HornFormula::new();
            for name_id in 0..base.atom_count() {
                shuffled.atom(base.atom_name(name_id as AtomId));
            }
            for clause in clauses {
                shuffled.push_clause(clause.body().to_vec(), clause.head());
            }
            let got = minimal_model(&shuffled).map(|m| names(&m, &shuffled));
            assert_eq!(got, ref_names);
        }
    }

    #[test]
    fn monotone_in_facts_and_goals() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let f = random_formula(&mut rng, 10, 12);
            let base_model = minimal_model(&f);
            let mut with_fact = f.clone();
            let extra = rng.gen_range(0..10);
            let atom = with_fact.atom(&format!("x{extra}"));
            with_fact.add_fact(atom);
            if let (Some(before), Some(after)) = (&base_model, &minimal_model(&with_fact)) {
                for id in before.ids() {
                    let name = f.atom_name(id);
                    let mapped = with_fact.index[name];
                    assert!(after.contains(mapped), "fact removed {name} from the model");
                }
            }
            let mut with_goal = f.clone();
            let goal_atom = with_goal.atom(&format!("x{}", rng.gen_range(0..10)));
            with_goal.add_goal(&[goal_atom]);
            if let (Some(before), Some(after)) = (&base_model, &minimal_model(&with_goal)) {
                assert_eq!(
                    names(before, &f),
                    names(after, &with_goal),
                    "goal clause changed the model"
                );
            }
        }
    }

    #[test]
    fn parse_roundtrip() {
        let text = "# facts\n-> a\na -> b\n\na & b -> c\nc -> FALSE\n";
        let f = HornFormula::parse(text).unwrap();
        assert_eq!(f.clauses().len(), 4);
        assert!(minimal_model(&f).is_none());
        let printed = f.to_string();
        let reparsed = HornFormula::parse(&printed).unwrap();
        assert_eq!(f.clauses(), reparsed.clauses());
    }

    #[test]
    fn parse_rejects_non_horn() {
        let err = HornFormula::parse("-> a\na -> b & c\n").unwrap_err();
        match err {
            Error::HornParse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("non-Horn"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_malformed_lines() {
        assert!(matches!(
            HornFormula::parse("a b -> c"),
            Err(Error::HornParse { line: 1, .. })
        ));
        assert!(matches!(
            HornFormula::parse("just_an_atom"),
            Err(Error::HornParse { line: 1, .. })
        ));
        assert!(matches!(
            HornFormula::parse("-> a\nFALSE -> b"),
            Err(Error::HornParse { line: 2, .. })
        ));
        assert!(matches!(
            HornFormula::parse("a -> b -> c"),
            Err(Error::HornParse { line: 1, .. })
        ));
        assert!(matches!(
            HornFormula::parse(" -> "),
            Err(Error::HornParse { line: 1, .. })
        ));
    }

    #[test]
    fn parse_accepts_structured_atom_names() {
        let f = HornFormula::parse("-> in_tube(cell_7)\nin_tube(cell_7) -> in_union(cell_7)\n").unwrap();
        let m = minimal_model(&f).unwrap();
        assert_eq!(m.sorted_names(&f), vec!["in_tube(cell_7)", "in_union(cell_7)"]);
    }

    fn random_formula(rng: &mut ChaCha8Rng, max_atoms: usize, max_clauses: usize) -> HornFormula {
        let n = rng.gen_range(1..=max_atoms);
        let mut f = HornFormula::new();
        let atoms: Vec<AtomId> = (0..n).map(|i| f.atom(&format!("x{i}"))).collect();
        let clauses = rng.gen_range(1..=max_clauses);
        for _ in 0..clauses {
            let body_len = rng.gen_range(0..=3.min(n));
            let body: Vec<AtomId> =
                (0..body_len).map(|_| atoms[rng.gen_range(0..n)]).collect();
            if rng.gen_bool(0.15) {
                f.add_goal(&body);
            } else {
                let head = atoms[rng.gen_range(0..n)];
                f.push_clause(body, Head::Atom(head));
            }
        }
        f
    }
}
