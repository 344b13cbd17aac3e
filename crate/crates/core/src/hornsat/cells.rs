//! Cell-level domain inference on top of the Horn engine.
//!
//! A catalogue records cells (discrete orbit-signature regions of
//! configuration space), a symmetric adjacency relation with optional Jost
//! interfaces, known-membership base facts, and permutation orbit maps
//! between cells. [`build_domain_rules`] compiles the catalogue into a Horn
//! formula whose least model stratifies the cells:
//!
//! ```text
//! -> in_tube(c)                        for tube base cells
//! -> in_etube(c)                       for extended-tube base cells
//! in_tube(c) -> in_etube(c)
//! in_etube(c) -> in_union(c)                            (identity orbit)
//! in_etube(orbit_pi(c)) -> in_union(c)                  per recorded pi
//! in_union(c) & adjacent(c,c') & jost_interface(c,c') -> in_union(c')
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{minimal_model, HornFormula};
use crate::error::Error;
use crate::Result;

/// Identifier of a catalogued cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub String);

impl CellId {
    pub fn new(name: impl Into<String>) -> Self {
        CellId(name.into())
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Discrete signature data attached to a cell (sign patterns of the arc
/// arrangement in `s = 2`).
pub type CellSignature = Vec<i8>;

/// Cells, adjacency, Jost interfaces and base membership facts.
#[derive(Debug, Clone, Default)]
pub struct CellCatalogue {
    cells: BTreeMap<CellId, CellSignature>,
    adjacency: BTreeSet<(CellId, CellId)>,
    jost: BTreeSet<(CellId, CellId)>,
    base_tube: BTreeSet<CellId>,
    base_etube: BTreeSet<CellId>,
}

impl CellCatalogue {
    pub fn new() -> Self {
        CellCatalogue::default()
    }

    pub fn add_cell(&mut self, id: CellId, signature: CellSignature) {
        self.cells.insert(id, signature);
    }

    fn check(&self, id: &CellId) -> Result<()> {
        if !self.cells.contains_key(id) {
            return Err(Error::UnknownCell(id.0.clone()));
        }
        Ok(())
    }

    /// Records `a ~ b` (stored symmetrically); `jost_interface` marks the
    /// shared boundary as containing Jost points.
    pub fn add_adjacency(&mut self, a: &CellId, b: &CellId, jost_interface: bool) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if jost_interface {
            self.jost.insert(key.clone());
        }
        self.adjacency.insert(key);
        Ok(())
    }

    /// Marks a cell as Inside the tube by direct test.
    pub fn mark_base_tube(&mut self, id: &CellId) -> Result<()> {
        self.check(id)?;
        self.base_tube.insert(id.clone());
        Ok(())
    }

    /// Marks a cell as Inside the extended tube by direct test.
    pub fn mark_base_etube(&mut self, id: &CellId) -> Result<()> {
        self.check(id)?;
        self.base_etube.insert(id.clone());
        Ok(())
    }

    pub fn cells(&self) -> impl Iterator<Item = &CellId> {
        self.cells.keys()
    }

    pub fn signature(&self, id: &CellId) -> Option<&CellSignature> {
        self.cells.get(id)
    }
}

/// The action of one permutation on cells.
#[derive(Debug, Clone)]
pub struct OrbitMap {
    pub label: String,
    pub map: BTreeMap<CellId, CellId>,
}

fn tube_atom(id: &CellId) -> String {
    format!("in_tube({id})")
}

fn etube_atom(id: &CellId) -> String {
    format!("in_etube({id})")
}

fn union_atom(id: &CellId) -> String {
    format!("in_union({id})")
}

/// Compiles the catalogue and orbit maps into a Horn formula.
pub fn build_domain_rules(cat: &CellCatalogue, orbits: &[OrbitMap]) -> Result<HornFormula> {
    let mut f = HornFormula::new();
    for id in cat.cells.keys() {
        let tube = f.atom(&tube_atom(id));
        let etube = f.atom(&etube_atom(id));
        let union = f.atom(&union_atom(id));
        f.add_rule(&[tube], etube);
        f.add_rule(&[etube], union);
    }
    for orbit in orbits {
        for (from, to) in &orbit.map {
            cat.check(from)?;
            cat.check(to)?;
            let image_etube = f.atom(&etube_atom(to));
            let union = f.atom(&union_atom(from));
            f.add_rule(&[image_etube], union);
        }
    }
    for (a, b) in &cat.adjacency {
        for (x, y) in [(a, b), (b, a)] {
            let adjacent = f.atom(&format!("adjacent({x},{y})"));
            f.add_fact(adjacent);
            let interface = f.atom(&format!("jost_interface({x},{y})"));
            if cat.jost.contains(&(a.clone(), b.clone())) {
                f.add_fact(interface);
            }
            let union_x = f.atom(&union_atom(x));
            let union_y = f.atom(&union_atom(y));
            f.add_rule(&[union_x, adjacent, interface], union_y);
        }
    }
    for id in &cat.base_tube {
        let tube = f.atom(&tube_atom(id));
        f.add_fact(tube);
    }
    for id in &cat.base_etube {
        let etube = f.atom(&etube_atom(id));
        f.add_fact(etube);
    }
    Ok(f)
}

/// Stratum label of a cell, strongest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellClass {
    Tube,
    Extended,
    Union,
    Outside,
}

/// Runs the minimal model of [`build_domain_rules`] and labels every cell by
/// its strongest derived fact. Monotone in the base-fact set.
pub fn classify_cells(cat: &CellCatalogue, orbits: &[OrbitMap]) -> Result<BTreeMap<CellId, CellClass>> {
    let mut f = build_domain_rules(cat, orbits)?;
    let model = minimal_model(&f).expect("domain rules contain no goal clauses");
    let mut out = BTreeMap::new();
    for id in cat.cells.keys() {
        let tube = f.atom(&tube_atom(id));
        let etube = f.atom(&etube_atom(id));
        let union = f.atom(&union_atom(id));
        let class = if model.contains(tube) {
            CellClass::Tube
        } else if model.contains(etube) {
            CellClass::Extended
        } else if model.contains(union) {
            CellClass::Union
        } else {
            CellClass::Outside
        };
        out.insert(id.clone(), class);
    }
    Ok(out)
}
