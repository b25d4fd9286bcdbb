use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::config::{OrderSpec, VarRef};
use super::{AssumptionSet, ColourError, ColourSystem, SymbolTuple, SymmetryGroup};
use crate::exactpoly::{MonomialOrder, Polynomial, Rational, VariableRegistry};

/// What a symbol or weight contributes to a product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Var(usize),
    Const(Rational),
    Zero,
}

impl Value {
    pub fn to_polynomial(&self) -> Polynomial {
        match self {
            Value::Var(v) => Polynomial::var(*v),
            Value::Const(c) => Polynomial::constant(c.clone()),
            Value::Zero => Polynomial::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarKind {
    Symbol(usize),
    Weight(u8),
    Bridge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolClass {
    /// Lexicographically least tuple of the orbit.
    pub canonical: SymbolTuple,
    /// Tuple used for the variable name: the priority-list spelling when
    /// listed, else the canonical tuple.
    pub label: SymbolTuple,
    pub orbit_size: usize,
    pub zero: bool,
    pub fixed: Option<Rational>,
    pub value: Value,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub classes: usize,
    pub zero: usize,
    pub fixed: usize,
    pub free: usize,
    /// Fixed plus free.
    pub nonzero: usize,
    pub weights_free: usize,
    pub weights_fixed: usize,
    pub variables: usize,
}

/// Every symbol class of a system with its value, plus the ring's variables.
#[derive(Clone, Debug)]
pub struct ClassTable {
    system: ColourSystem,
    assumptions: AssumptionSet,
    group: SymmetryGroup,
    classes: Vec<SymbolClass>,
    lookup: Vec<u32>,
    weights: Vec<Value>,
    order: MonomialOrder,
    kinds: Vec<VarKind>,
}

fn tuple_code(sys: &ColourSystem, t: &SymbolTuple) -> usize {
    let (m, n) = (sys.m(), sys.n());
    let mut code = 0usize;
    for &s in &t.strata {
        code = code * m + s as usize;
    }
    for &e in &t.edges {
        code = code * n + e as usize;
    }
    code
}

fn tuple_of_code(sys: &ColourSystem, mut code: usize) -> SymbolTuple {
    let (m, n) = (sys.m(), sys.n());
    let mut t = SymbolTuple {
        strata: [0; 6],
        edges: [0; 4],
    };
    for k in (0..4).rev() {
        t.edges[k] = (code % n) as u8;
        code /= n;
    }
    for k in (0..6).rev() {
        t.strata[k] = (code % m) as u8;
        code /= m;
    }
    t
}

fn escape(token: &str) -> String {
    token.replace('-', "m")
}

impl ClassTable {
    pub fn build(system: &ColourSystem, assumptions: &AssumptionSet, order_spec: &OrderSpec) -> Result<ClassTable, ColourError> {
        assumptions.validate(system)?;
        let group = SymmetryGroup::new(assumptions.edge_symmetry);
        let inv = system.involution();
        let total = system.m().pow(6) * system.n().pow(4);
        let mut lookup = vec![u32::MAX; total];
        let mut classes: Vec<SymbolClass> = Vec::new();
        for code in 0..total {
            if lookup[code] != u32::MAX {
                continue;
            }
            let t = tuple_of_code(system, code);
            let orbit = group.orbit(&t, inv);
            let canonical = orbit[0];
            let idx = classes.len() as u32;
            for o in &orbit {
                lookup[tuple_code(system, o)] = idx;
            }
            classes.push(SymbolClass {
                canonical,
                label: canonical,
                orbit_size: orbit.len(),
                zero: assumptions.is_zero(&canonical),
                fixed: None,
                value: Value::Zero,
            });
        }

        for f in &assumptions.fixed_symbols {
            let mut choices: Vec<[u8; 4]> = vec![[0; 4]];
            for k in 0..4 {
                let options: Vec<u8> = match f.edges[k] {
                    Some(e) => vec![e],
                    None => (0..system.n() as u8).collect(),
                };
                choices = choices
                    .into_iter()
                    .flat_map(|c| {
                        options.iter().map(move |&e| {
                            let mut c = c;
                            c[k] = e;
                            c
                        })
                    })
                    .collect();
            }
            for edges in choices {
                let t = SymbolTuple { strata: f.strata, edges };
                let cls = &mut classes[lookup[tuple_code(system, &t)] as usize];
                match &cls.fixed {
                    Some(v) if *v != f.value => {
                        return Err(ColourError::ConflictingFixedValue(system.tuple_text(&cls.canonical)));
                    }
                    _ => cls.fixed = Some(f.value.clone()),
                }
            }
        }

        let mut weight_fixed: HashMap<u8, Rational> = HashMap::new();
        for (c, v) in &assumptions.fixed_weights {
            let rep = system.weight_representative(*c);
            if let Some(old) = weight_fixed.insert(rep, v.clone()) {
                if old != *v {
                    return Err(ColourError::ConflictingFixedValue(format!("w({})", system.strata_tokens()[rep as usize])));
                }
            }
        }
        let weight_reps: Vec<u8> = {
            let mut r: Vec<u8> = (0..system.m() as u8).map(|c| system.weight_representative(c)).collect();
            r.sort_unstable();
            r.dedup();
            r
        };

        // Variables: priority list first, then free classes, free weights,
        // and the bridge variable.
        let free_class = |c: &SymbolClass| !c.zero && c.fixed.is_none();
        let mut kinds: Vec<VarKind> = Vec::new();
        let mut placed_class = vec![false; classes.len()];
        let mut placed_weight: Vec<u8> = Vec::new();
        let mut placed_bridge = false;
        for r in &order_spec.variables {
            match r {
                VarRef::Symbol { strata, edges } => {
                    let t = parse_tuple(system, strata, edges.as_ref())?;
                    let ci = lookup[tuple_code(system, &t)] as usize;
                    if !free_class(&classes[ci]) || placed_class[ci] {
                        return Err(ColourError::PriorityNotFree(r.to_string()));
                    }
                    placed_class[ci] = true;
                    classes[ci].label = t;
                    kinds.push(VarKind::Symbol(ci));
                }
                VarRef::Weight(tok) => {
                    let rep = system.weight_representative(system.strata_index(tok)?);
                    if weight_fixed.contains_key(&rep) || placed_weight.contains(&rep) {
                        return Err(ColourError::PriorityNotFree(r.to_string()));
                    }
                    placed_weight.push(rep);
                    kinds.push(VarKind::Weight(rep));
                }
                VarRef::Named(name) => {
                    if assumptions.bridge_variable.as_deref() != Some(name.as_str()) || placed_bridge {
                        return Err(ColourError::PriorityNotFree(r.to_string()));
                    }
                    placed_bridge = true;
                    kinds.push(VarKind::Bridge);
                }
            }
        }
        let mut rest: Vec<usize> = (0..classes.len()).filter(|&i| free_class(&classes[i]) && !placed_class[i]).collect();
        rest.sort_by_key(|&i| classes[i].canonical);
        kinds.extend(rest.into_iter().map(VarKind::Symbol));
        for &rep in &weight_reps {
            if !weight_fixed.contains_key(&rep) && !placed_weight.contains(&rep) {
                kinds.push(VarKind::Weight(rep));
            }
        }
        if assumptions.bridge_variable.is_some() && !placed_bridge {
            kinds.push(VarKind::Bridge);
        }

        let names: Vec<String> = kinds
            .iter()
            .map(|k| match k {
                VarKind::Symbol(ci) => symbol_name(system, &classes[*ci].label),
                VarKind::Weight(rep) => format!("w{}", escape(&system.strata_tokens()[*rep as usize])),
                VarKind::Bridge => assumptions.bridge_variable.clone().expect("bridge"),
            })
            .collect();
        let registry = VariableRegistry::new(names)?;

        for c in classes.iter_mut() {
            c.value = if c.zero {
                Value::Zero
            } else if let Some(v) = &c.fixed {
                if v == &Rational::from_integer(0.into()) {
                    Value::Zero
                } else {
                    Value::Const(v.clone())
                }
            } else {
                Value::Zero
            };
        }
        let mut weights = vec![Value::Zero; system.m()];
        for (vi, k) in kinds.iter().enumerate() {
            if let VarKind::Symbol(ci) = k {
                classes[*ci].value = Value::Var(vi);
            }
        }
        for c in 0..system.m() as u8 {
            let rep = system.weight_representative(c);
            weights[c as usize] = match weight_fixed.get(&rep) {
                Some(v) => Value::Const(v.clone()),
                None => Value::Var(kinds.iter().position(|k| *k == VarKind::Weight(rep)).expect("weight variable")),
            };
        }

        Ok(ClassTable {
            system: system.clone(),
            assumptions: assumptions.clone(),
            group,
            classes,
            lookup,
            weights,
            order: MonomialOrder::new(order_spec.kind, Arc::new(registry)),
            kinds,
        })
    }

    pub fn system(&self) -> &ColourSystem {
        &self.system
    }

    pub fn assumptions(&self) -> &AssumptionSet {
        &self.assumptions
    }

    pub fn group(&self) -> &SymmetryGroup {
        &self.group
    }

    pub fn classes(&self) -> &[SymbolClass] {
        &self.classes
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn registry(&self) -> &Arc<VariableRegistry> {
        self.order.registry()
    }

    pub fn variable_kinds(&self) -> &[VarKind] {
        &self.kinds
    }

    pub fn class_index(&self, t: &SymbolTuple) -> usize {
        self.lookup[tuple_code(&self.system, t)] as usize
    }

    pub fn class_of(&self, t: &SymbolTuple) -> &SymbolClass {
        &self.classes[self.class_index(t)]
    }

    /// Value of the symbol with arguments `t`.
    pub fn resolve(&self, t: &SymbolTuple) -> &Value {
        &self.class_of(t).value
    }

    /// Value of the weight of strata colour `c`.
    pub fn weight(&self, c: u8) -> &Value {
        &self.weights[c as usize]
    }

    pub fn bridge_variable(&self) -> Option<usize> {
        self.kinds.iter().position(|k| *k == VarKind::Bridge)
    }

    /// Canonical representative of `t` under the symmetry group.
    pub fn canonicalize(&self, t: &SymbolTuple) -> SymbolTuple {
        self.class_of(t).canonical
    }

    pub fn counts(&self) -> ClassCounts {
        let mut c = ClassCounts {
            classes: self.classes.len(),
            variables: self.kinds.len(),
            ..Default::default()
        };
        for cl in &self.classes {
            match (&cl.zero, &cl.fixed) {
                (true, _) => c.zero += 1,
                (false, Some(_)) => c.fixed += 1,
                (false, None) => c.free += 1,
            }
        }
        c.nonzero = c.fixed + c.free;
        c.weights_free = self.kinds.iter().filter(|k| matches!(k, VarKind::Weight(_))).count();
        let mut reps: Vec<u8> = (0..self.system.m() as u8).map(|x| self.system.weight_representative(x)).collect();
        reps.sort_unstable();
        reps.dedup();
        c.weights_fixed = reps.len() - c.weights_free;
        c
    }
}

/// `j` followed by the strata tokens, and `_` plus edge tokens when `n > 1`.
pub fn symbol_name(sys: &ColourSystem, t: &SymbolTuple) -> String {
    let mut s = String::from("j");
    for &c in &t.strata {
        s.push_str(&escape(&sys.strata_tokens()[c as usize]));
    }
    if sys.n() > 1 {
        s.push('_');
        for &e in &t.edges {
            s.push_str(&escape(&sys.edge_tokens()[e as usize]));
        }
    }
    s
}

pub(crate) fn parse_tuple(sys: &ColourSystem, strata: &[String; 6], edges: Option<&[String; 4]>) -> Result<SymbolTuple, ColourError> {
    let mut t = SymbolTuple {
        strata: [0; 6],
        edges: [0; 4],
    };
    for i in 0..6 {
        t.strata[i] = sys.strata_index(&strata[i])?;
    }
    match edges {
        Some(e) => {
            for k in 0..4 {
                t.edges[k] = sys.edge_index(&e[k])?;
            }
        }
        None if sys.n() == 1 => {}
        None => return Err(ColourError::UnknownToken("missing edge colours".into())),
    }
    Ok(t)
}
