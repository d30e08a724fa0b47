//! Finite commutative unital rings stored as explicit Cayley tables.
//!
//! Every ring carries its full addition and multiplication tables over a
//! canonical enumeration of elements `0..order`. Downstream algorithms only
//! ever loop over [`ElementId`]s, so the same code handles ℤₙ, products and
//! polynomial quotients alike.

use std::fmt;

use crate::error::Error;

/// Default bound on the number of elements a constructed ring may have.
pub const DEFAULT_ORDER_CAP: usize = 512;

/// Index of an element in its ring's canonical enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// How a ring was built. Only used where a constructor needs to know the
/// shape of its input (polynomial quotients require a ℤₘ base).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Modular(u64),
    Product,
    PolyQuotient { modulus: u64, degree: usize },
    Quotient,
    Tables,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    order: usize,
    add: Vec<ElementId>,
    mul: Vec<ElementId>,
    zero: ElementId,
    one: ElementId,
    names: Vec<String>,
    label: String,
    structure: Structure,
}

impl FiniteRing {
    /// Builds a ring directly from its tables (row-major, `order * order`).
    ///
    /// Only the shapes are validated here; the algebraic laws are checked by
    /// [`verify_ring_axioms`]. Entries out of range are rejected since every
    /// other routine indexes the tables unchecked.
    pub fn from_tables(
        label: impl Into<String>,
        names: Vec<String>,
        add: Vec<ElementId>,
        mul: Vec<ElementId>,
        zero: ElementId,
        one: ElementId,
    ) -> Result<Self, Error> {
        let order = names.len();
        if order < 2 {
            return Err(Error::NonzeroRingRequired { order: order as u64 });
        }
        let cells = order * order;
        if add.len() != cells || mul.len() != cells {
            return Err(Error::MalformedTables(format!(
                "expected {cells} entries per table, got {} (add) and {} (mul)",
                add.len(),
                mul.len()
            )));
        }
        let in_range = |e: &ElementId| e.index() < order;
        if !add.iter().chain(mul.iter()).all(in_range) || !in_range(&zero) || !in_range(&one) {
            return Err(Error::MalformedTables("element index out of range".into()));
        }
        Ok(FiniteRing {
            order,
            add,
            mul,
            zero,
            one,
            names,
            label: label.into(),
            structure: Structure::Tables,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.order).map(ElementId::from)
    }

    /// Looks an element up by its display name.
    pub fn element_named(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == name).map(ElementId::from)
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add[a.index() * self.order + b.index()]
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a.index() * self.order + b.index()]
    }

    /// Additive inverse, read off the addition table.
    pub fn neg(&self, a: ElementId) -> ElementId {
        let row = &self.add[a.index() * self.order..(a.index() + 1) * self.order];
        row.iter()
            .position(|&s| s == self.zero)
            .map(ElementId::from)
            .expect("additive inverse exists in a valid ring")
    }

    pub fn sub(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add(a, self.neg(b))
    }

    pub fn is_zero(&self, a: ElementId) -> bool {
        a == self.zero
    }

    pub fn add_table(&self) -> &[ElementId] {
        &self.add
    }

    pub fn mul_table(&self) -> &[ElementId] {
        &self.mul
    }

    /// Returns a copy with a single multiplication-table cell overwritten.
    /// Handy for exercising the axiom checker on broken tables.
    pub fn with_mul_entry(&self, a: ElementId, b: ElementId, value: ElementId) -> FiniteRing {
        let mut r = self.clone();
        r.mul[a.index() * self.order + b.index()] = value;
        r.structure = Structure::Tables;
        r
    }

    pub fn is_unit(&self, x: ElementId) -> bool {
        self.elements().any(|y| self.mul(x, y) == self.one)
    }
}

fn checked_cap(order: u128, cap: usize) -> Result<usize, Error> {
    if order > cap as u128 {
        Err(Error::OrderCapExceeded { order, cap })
    } else {
        Ok(order as usize)
    }
}

/// ℤₙ with elements `0..n` named in decimal.
pub fn make_modular_ring(n: u64) -> Result<FiniteRing, Error> {
    if n < 2 {
        return Err(Error::NonzeroRingRequired { order: n });
    }
    let order = usize::try_from(n).map_err(|_| Error::OrderCapExceeded {
        order: n as u128,
        cap: usize::MAX,
    })?;
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..n {
        for b in 0..n {
            add.push(ElementId(((a + b) % n) as u32));
            mul.push(ElementId(((a as u128 * b as u128) % n as u128) as u32));
        }
    }
    Ok(FiniteRing {
        order,
        add,
        mul,
        zero: ElementId(0),
        one: ElementId(1),
        names: (0..n).map(|i| i.to_string()).collect(),
        label: format!("Zn({n})"),
        structure: Structure::Modular(n),
    })
}

/// Same as [`make_modular_ring`] but refuses orders above `cap`.
pub fn make_modular_ring_capped(n: u64, cap: usize) -> Result<FiniteRing, Error> {
    if n >= 2 {
        checked_cap(n as u128, cap)?;
    }
    make_modular_ring(n)
}

/// Direct product `a × b`; pair `(i, j)` gets index `i * |b| + j`.
pub fn make_product_ring(a: &FiniteRing, b: &FiniteRing, cap: usize) -> Result<FiniteRing, Error> {
    let order = checked_cap(a.order as u128 * b.order as u128, cap)?;
    let pair = |i: ElementId, j: ElementId| ElementId::from(i.index() * b.order + j.index());
    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for xa in a.elements() {
        for xb in b.elements() {
            for ya in a.elements() {
                for yb in b.elements() {
                    add.push(pair(a.add(xa, ya), b.add(xb, yb)));
                    mul.push(pair(a.mul(xa, ya), b.mul(xb, yb)));
                }
            }
        }
    }
    let names = a
        .elements()
        .flat_map(|x| b.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", a.name(x), b.name(y)))
        .collect();
    Ok(FiniteRing {
        order,
        add,
        mul,
        zero: pair(a.zero, b.zero),
        one: pair(a.one, b.one),
        names,
        label: format!("{} x {}", a.label, b.label),
        structure: Structure::Product,
    })
}

/// ℤₘ[x]/(f) for a monic `f` of degree `d ≥ 1`.
///
/// `modulus` lists coefficients constant-first; its last entry is the
/// leading coefficient and must be 1 after reduction mod m. Elements are the
/// remainders of degree < d, enumerated so that the coefficient tuple
/// `(c0, .., c_{d-1})` has index `c0 + c1·m + … + c_{d-1}·m^{d-1}`.
pub fn make_poly_quotient_ring(
    base: &FiniteRing,
    modulus: &[u64],
    cap: usize,
) -> Result<FiniteRing, Error> {
    let m = match base.structure {
        Structure::Modular(m) => m,
        _ => return Err(Error::UnsupportedBaseRing(base.label.clone())),
    };
    let coeffs: Vec<u64> = modulus.iter().map(|c| c % m).collect();
    if coeffs.len() < 2 || coeffs.last() != Some(&1) {
        return Err(Error::MonicModulusRequired(format_poly(modulus)));
    }
    let degree = coeffs.len() - 1;
    let order = checked_cap((m as u128).saturating_pow(degree as u32), cap)?;

    let decode = |mut idx: usize| -> Vec<u64> {
        let mut c = vec![0; degree];
        for slot in c.iter_mut() {
            *slot = (idx as u64) % m;
            idx /= m as usize;
        }
        c
    };
    let encode = |c: &[u64]| -> ElementId {
        let idx = c.iter().rev().fold(0usize, |acc, &ci| acc * m as usize + ci as usize);
        ElementId::from(idx)
    };
    let polys: Vec<Vec<u64>> = (0..order).map(decode).collect();

    // x^d ≡ -(f_0 + f_1 x + … + f_{d-1} x^{d-1})
    let tail: Vec<u64> = coeffs[..degree].iter().map(|&c| (m - c) % m).collect();
    let reduce = |mut prod: Vec<u64>| -> Vec<u64> {
        for k in (degree..prod.len()).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &t) in tail.iter().enumerate() {
                let cell = &mut prod[k - degree + i];
                *cell = ((*cell as u128 + top as u128 * t as u128) % m as u128) as u64;
            }
        }
        prod.truncate(degree);
        prod
    };

    let mut add = Vec::with_capacity(order * order);
    let mut mul = Vec::with_capacity(order * order);
    for p in &polys {
        for q in &polys {
            let sum: Vec<u64> = p.iter().zip(q).map(|(a, b)| (a + b) % m).collect();
            add.push(encode(&sum));
            let mut prod = vec![0u64; 2 * degree - 1];
            for (i, &a) in p.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in q.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u128 + a as u128 * b as u128) % m as u128) as u64;
                }
            }
            mul.push(encode(&reduce(prod)));
        }
    }
    let mut one = vec![0; degree];
    one[0] = 1 % m;
    Ok(FiniteRing {
        order,
        add,
        mul,
        zero: ElementId(0),
        one: encode(&one),
        names: polys.iter().map(|p| format_poly(p)).collect(),
        label: format!("poly({}, {})", base.label, format_poly(&coeffs)),
        structure: Structure::PolyQuotient { modulus: m, degree },
    })
}

/// Renders a constant-first coefficient list as `2*x^2+x+1`.
pub fn format_poly(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}*x"),
            (k, 1) => format!("x^{k}"),
            (k, c) => format!("{c}*x^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// Ring axioms in the order [`verify_ring_axioms`] checks them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    ZeroIsNotOne,
    AdditiveCommutativity,
    MultiplicativeCommutativity,
    AdditiveIdentity,
    MultiplicativeIdentity,
    AdditiveInverse,
    AdditiveLatinRows,
    AdditiveAssociativity,
    MultiplicativeAssociativity,
    Distributivity,
}

impl Axiom {
    pub const CHECK_ORDER: [Axiom; 10] = [
        Axiom::ZeroIsNotOne,
        Axiom::AdditiveCommutativity,
        Axiom::MultiplicativeCommutativity,
        Axiom::AdditiveIdentity,
        Axiom::MultiplicativeIdentity,
        Axiom::AdditiveInverse,
        Axiom::AdditiveLatinRows,
        Axiom::AdditiveAssociativity,
        Axiom::MultiplicativeAssociativity,
        Axiom::Distributivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::ZeroIsNotOne => "zero != one",
            Axiom::AdditiveCommutativity => "additive commutativity",
            Axiom::MultiplicativeCommutativity => "multiplicative commutativity",
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::MultiplicativeIdentity => "multiplicative identity",
            Axiom::AdditiveInverse => "additive inverse",
            Axiom::AdditiveLatinRows => "addition rows are permutations",
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::MultiplicativeAssociativity => "multiplicative associativity",
            Axiom::Distributivity => "distributivity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<ElementId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub passed: bool,
    pub violation: Option<Violation>,
}

/// Exhaustively checks the commutative unital ring axioms, stopping at the
/// first failure in [`Axiom::CHECK_ORDER`].
pub fn verify_ring_axioms(r: &FiniteRing) -> AxiomReport {
    match first_violation(r) {
        None => AxiomReport { passed: true, violation: None },
        Some(v) => AxiomReport { passed: false, violation: Some(v) },
    }
}

fn first_violation(r: &FiniteRing) -> Option<Violation> {
    let fail = |axiom, witness: &[ElementId]| Some(Violation { axiom, witness: witness.to_vec() });
    let (zero, one) = (r.zero, r.one);
    if zero == one {
        return fail(Axiom::ZeroIsNotOne, &[zero]);
    }
    for a in r.elements() {
        for b in r.elements() {
            if r.add(a, b) != r.add(b, a) {
                return fail(Axiom::AdditiveCommutativity, &[a, b]);
            }
        }
    }
    for a in r.elements() {
        for b in r.elements() {
            if r.mul(a, b) != r.mul(b, a) {
                return fail(Axiom::MultiplicativeCommutativity, &[a, b]);
            }
        }
    }
    if let Some(a) = r.elements().find(|&a| r.add(a, zero) != a) {
        return fail(Axiom::AdditiveIdentity, &[a]);
    }
    if let Some(a) = r.elements().find(|&a| r.mul(a, one) != a) {
        return fail(Axiom::MultiplicativeIdentity, &[a]);
    }
    if let Some(a) = r.elements().find(|&a| !r.elements().any(|b| r.add(a, b) == zero)) {
        return fail(Axiom::AdditiveInverse, &[a]);
    }
    let mut seen = vec![false; r.order];
    for a in r.elements() {
        seen.iter_mut().for_each(|s| *s = false);
        for b in r.elements() {
            let s = r.add(a, b).index();
            if seen[s] {
                return fail(Axiom::AdditiveLatinRows, &[a, b]);
            }
            seen[s] = true;
        }
    }
    for a in r.elements() {
        for b in r.elements() {
            let ab = r.add(a, b);
            for c in r.elements() {
                if r.add(ab, c) != r.add(a, r.add(b, c)) {
                    return fail(Axiom::AdditiveAssociativity, &[a, b, c]);
                }
            }
        }
    }
    for a in r.elements() {
        for b in r.elements() {
            let ab = r.mul(a, b);
            for c in r.elements() {
                if r.mul(ab, c) != r.mul(a, r.mul(b, c)) {
                    return fail(Axiom::MultiplicativeAssociativity, &[a, b, c]);
                }
            }
        }
    }
    for a in r.elements() {
        for b in r.elements() {
            for c in r.elements() {
                if r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)) {
                    return fail(Axiom::Distributivity, &[a, b, c]);
                }
            }
        }
    }
    None
}

/// All invertible elements, in ascending order.
pub fn units(r: &FiniteRing) -> Vec<ElementId> {
    r.elements().filter(|&x| r.is_unit(x)).collect()
}
