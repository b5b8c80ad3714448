//! Finite subgroups by coset extension, with their relation lattice.

use std::collections::HashMap;

use super::{invariant_factors, DivisorClass, JacobianError};
use crate::arith::Fp;
use crate::curve::{enumerate_points, CurveModel, Point, Sign};
use crate::divisor::{places_over, CurveField, Divisor, Place};
use crate::par::Exec;
use crate::poly::{factor_ff, Poly};

pub const DEFAULT_SPAN_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct GroupStructure<F: crate::arith::Field> {
    pub generators: Vec<DivisorClass<F>>,
    /// Every element with integer coordinates in the generators, sorted by coordinates.
    pub elements: Vec<(Vec<i64>, DivisorClass<F>)>,
    /// Generators of the relation lattice among the generators.
    pub relations: Vec<Vec<i64>>,
    pub invariant_factors: Vec<u64>,
}

impl<F: CurveField> GroupStructure<F> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &DivisorClass<F>) -> bool {
        self.elements.iter().any(|(_, e)| e == a)
    }

    /// Coordinates of `a`, if it lies in the subgroup.
    pub fn coordinates(&self, a: &DivisorClass<F>) -> Option<&[i64]> {
        self.elements
            .iter()
            .find(|(_, e)| e == a)
            .map(|(v, _)| v.as_slice())
    }
}

struct Builder<'a, F: CurveField> {
    c: &'a CurveModel<F>,
    exec: Exec,
    budget: usize,
    gens: Vec<DivisorClass<F>>,
    elements: Vec<(Vec<i64>, DivisorClass<F>)>,
    index: HashMap<DivisorClass<F>, usize>,
    relations: Vec<Vec<i64>>,
}

impl<'a, F: CurveField> Builder<'a, F> {
    fn new(c: &'a CurveModel<F>, exec: Exec, budget: usize) -> Self {
        let id = DivisorClass::identity();
        Builder {
            c,
            exec,
            budget,
            gens: Vec::new(),
            elements: vec![(Vec::new(), id.clone())],
            index: HashMap::from([(id, 0)]),
            relations: Vec::new(),
        }
    }

    /// Adjoins `g`, extending coordinates by one slot.
    fn push(&mut self, g: DivisorClass<F>) -> Result<(), JacobianError> {
        let j = self.gens.len();
        for (v, _) in self.elements.iter_mut() {
            v.push(0);
        }
        for r in self.relations.iter_mut() {
            r.push(0);
        }
        // smallest m > 0 with m g in the current subgroup
        let mut multiples = vec![DivisorClass::identity()];
        let mut cur = g.clone();
        let (m, hit) = loop {
            if let Some(&i) = self.index.get(&cur) {
                break (multiples.len(), i);
            }
            multiples.push(cur.clone());
            if multiples.len() * self.elements.len() > self.budget {
                return Err(JacobianError::BudgetExceeded(self.budget));
            }
            cur = cur.add(&g, self.c);
        };
        let mut rel = vec![0i64; j + 1];
        rel[j] = m as i64;
        for (r, x) in rel.iter_mut().zip(&self.elements[hit].0) {
            *r -= x;
        }
        self.relations.push(rel);
        let base = self.elements.clone();
        for (i, mg) in multiples.iter().enumerate().skip(1) {
            let c = self.c;
            let coset = self.exec.map(&base, |(v, h)| {
                let mut w = v.clone();
                w[j] = i as i64;
                (w, h.add(mg, c))
            });
            for (w, h) in coset {
                debug_assert!(!self.index.contains_key(&h));
                self.index.insert(h.clone(), self.elements.len());
                self.elements.push((w, h));
            }
        }
        self.gens.push(g);
        Ok(())
    }

    fn finish(mut self) -> GroupStructure<F> {
        self.elements.sort_by(|a, b| a.0.cmp(&b.0));
        let n = self.gens.len();
        GroupStructure {
            invariant_factors: invariant_factors(&self.relations, n),
            generators: self.gens,
            elements: self.elements,
            relations: self.relations,
        }
    }
}

/// The subgroup generated by torsion classes, enumerated by closure.
pub fn span<F: CurveField>(
    gens: &[DivisorClass<F>],
    c: &CurveModel<F>,
    budget: usize,
    exec: Exec,
) -> Result<GroupStructure<F>, JacobianError> {
    let mut b = Builder::new(c, exec, budget);
    for g in gens {
        b.push(g.clone())?;
    }
    Ok(b.finish())
}

/// All of `J(F_p)`, generated by `P - inf-` over places of degree 1, then degree 2,
/// stopping as soon as `expected` classes are reached.
pub fn enumerate_jacobian(
    c: &CurveModel<Fp>,
    expected: u64,
    exec: Exec,
) -> Result<GroupStructure<Fp>, JacobianError> {
    let p = *c.ctx();
    let inf_m = Place::Infinity(Sign::Minus);
    let mut candidates: Vec<Divisor<Fp>> = enumerate_points(c, exec)
        .map_err(|_| JacobianError::BadPrime(p))?
        .iter()
        .filter(|pt| !matches!(pt, Point::Infinity(Sign::Minus)))
        .map(|pt| Divisor::from_terms([(Place::from_point(pt), 1), (inf_m.clone(), -1)]))
        .collect();
    for a in 0..p {
        for b in 0..p {
            let w = Poly::from_i64s(&p, &[b as i64, a as i64, 1]);
            if factor_ff(&w).is_irreducible() {
                for pl in places_over(c, &w) {
                    candidates.push(Divisor::from_terms([(pl, 1), (inf_m.clone(), -2)]));
                }
            }
        }
    }
    let mut b = Builder::new(c, exec, DEFAULT_SPAN_BUDGET);
    for d in candidates {
        if b.elements.len() as u64 >= expected {
            break;
        }
        let g = DivisorClass::of(&d, c)?;
        if !b.index.contains_key(&g) {
            b.push(g)?;
        }
    }
    let got = b.elements.len() as u64;
    if got != expected {
        return Err(JacobianError::Incomplete { expected, got });
    }
    Ok(b.finish())
}

/// `r` with `2^r` elements of order dividing 2, counted directly.
pub fn two_rank<F: CurveField>(g: &GroupStructure<F>, c: &CurveModel<F>, exec: Exec) -> u32 {
    let hits = exec.map(&g.elements, |(_, a)| a.add(a, c).is_identity());
    let n = hits.into_iter().filter(|&h| h).count();
    debug_assert!(n.is_power_of_two());
    n.trailing_zeros()
}
