//! Lexicographic Gröbner checks for the binomial ideal and its squarefree initial complex.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::order::{ColumnPermutation, VarOrder};
use crate::scroll::{generators, ExtensionSpec, GeneratorSystem, Minor};

/// A monomial as a map from variables to positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: BTreeMap<Vertex, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Vertex) -> Self {
        Monomial::product(&[v])
    }

    pub fn product(vs: &[Vertex]) -> Self {
        let mut m = Monomial::one();
        for &v in vs {
            *m.exps.entry(v).or_insert(0) += 1;
        }
        m
    }

    pub fn exponent(&self, v: Vertex) -> u32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (&v, &e) in &other.exps {
            *m.exps.entry(v).or_insert(0) += e;
        }
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(v, &e)| other.exponent(*v) >= e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.keys().all(|v| !other.exps.contains_key(v))
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.values().all(|&e| e == 1)
    }

    pub fn support(&self) -> Vec<Vertex> {
        self.exps.keys().copied().collect()
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.exps.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(&v, &e)| if e == 1 { g.name(v).to_string() } else { format!("{}^{}", g.name(v), e) })
            .collect();
        parts.join("*")
    }
}

/// Compares two monomials in the lexicographic order induced by `order`.
pub fn lex_compare(order: &VarOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    let mut vars: Vec<(usize, Vertex)> = Vec::new();
    for &v in a.exps.keys().chain(b.exps.keys()) {
        let p = order
            .position(v)
            .filter(|&p| p < order.len())
            .ok_or_else(|| Error::UnrankedVariable(format!("#{}", v.0)))?;
        vars.push((p, v));
    }
    vars.sort_unstable();
    vars.dedup();
    for (_, v) in vars {
        match a.exponent(v).cmp(&b.exponent(v)) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

/// A polynomial with integer coefficients, terms sorted from the largest down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<(Monomial, i64)>,
}

impl Polynomial {
    pub fn terms(&self) -> &[(Monomial, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, i64)> {
        self.terms.first()
    }

    pub fn display(&self, g: &Graph) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.unsigned_abs();
            let body = m.display(g);
            let joined = if mag == 1 { body } else { format!("{mag}*{body}") };
            if i > 0 {
                s.push(' ');
            }
            s.push_str(sign);
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&joined);
        }
        s
    }
}

/// `lead + coefficient * trail`, with `lead` the larger monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub lead: Monomial,
    pub trail: Monomial,
    pub coefficient: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SPolynomial {
    /// Coprime leads: the pair needs no reduction.
    Skipped,
    Value(Polynomial),
}

type Dense = Vec<u16>;
type DensePoly = BTreeMap<Dense, i64>;

/// Polynomial arithmetic for lex with a fixed variable order.
#[derive(Clone, Debug)]
pub struct LexRing {
    order: VarOrder,
}

impl LexRing {
    pub fn new(order: VarOrder) -> Self {
        LexRing { order }
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    fn dense(&self, m: &Monomial) -> Result<Dense> {
        let mut d = vec![0u16; self.order.len()];
        for (&v, &e) in &m.exps {
            let p = self
                .order
                .position(v)
                .filter(|&p| p < d.len())
                .ok_or_else(|| Error::UnrankedVariable(format!("#{}", v.0)))?;
            d[p] = u16::try_from(e).map_err(|_| Error::ExponentOverflow)?;
        }
        Ok(d)
    }

    fn sparse(&self, d: &Dense) -> Monomial {
        let exps = d
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(p, &e)| (self.order.sequence()[p], u32::from(e)))
            .collect();
        Monomial { exps }
    }

    fn to_dense(&self, p: &Polynomial) -> Result<DensePoly> {
        let mut out = DensePoly::new();
        for (m, c) in &p.terms {
            add_term(&mut out, self.dense(m)?, *c)?;
        }
        Ok(out)
    }

    fn to_sparse(&self, p: &DensePoly) -> Polynomial {
        Polynomial { terms: p.iter().rev().map(|(d, &c)| (self.sparse(d), c)).collect() }
    }

    /// Builds a polynomial from terms; like terms are combined.
    pub fn polynomial(&self, terms: &[(Monomial, i64)]) -> Result<Polynomial> {
        let mut dp = DensePoly::new();
        for (m, c) in terms {
            add_term(&mut dp, self.dense(m)?, *c)?;
        }
        Ok(self.to_sparse(&dp))
    }

    pub fn binomial(&self, a: &Monomial, b: &Monomial, coefficient: i64) -> Result<Binomial> {
        Ok(match lex_compare(&self.order, a, b)? {
            Ordering::Less => Binomial { lead: b.clone(), trail: a.clone(), coefficient },
            _ => Binomial { lead: a.clone(), trail: b.clone(), coefficient },
        })
    }

    pub fn minor(&self, m: &Minor) -> Result<Polynomial> {
        let a = Monomial::product(&[m.first.0, m.first.1]);
        let b = Monomial::product(&[m.second.0, m.second.1]);
        self.polynomial(&[(a, 1), (b, -1)])
    }

    pub fn s_polynomial(&self, f: &Polynomial, g: &Polynomial) -> Result<SPolynomial> {
        let (fd, gd) = (self.to_dense(f)?, self.to_dense(g)?);
        Ok(match s_poly(&fd, &gd)? {
            None => SPolynomial::Skipped,
            Some(s) => SPolynomial::Value(self.to_sparse(&s)),
        })
    }

    /// Full reduction, always dividing by the first basis element whose lead divides.
    /// A lead with a coefficient other than ±1 only cancels exact multiples.
    pub fn reduce(&self, p: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
        let dense: Vec<DensePoly> = basis.iter().map(|b| self.to_dense(b)).collect::<Result<_>>()?;
        let r = reduce_dense(self.to_dense(p)?, &dense)?;
        Ok(self.to_sparse(&r))
    }

    /// Buchberger's criterion on the given basis.
    pub fn is_groebner(&self, basis: &[Polynomial]) -> Result<GroebnerVerdict> {
        let dense: Vec<DensePoly> = basis.iter().map(|b| self.to_dense(b)).collect::<Result<_>>()?;
        let mut reduced = 0;
        let mut skipped = 0;
        for i in 0..dense.len() {
            for j in i + 1..dense.len() {
                match s_poly(&dense[i], &dense[j])? {
                    None => skipped += 1,
                    Some(s) => {
                        reduced += 1;
                        let r = reduce_dense(s, &dense)?;
                        if !r.is_empty() {
                            return Ok(GroebnerVerdict::No { first: i, second: j, normal_form: self.to_sparse(&r) });
                        }
                    }
                }
            }
        }
        Ok(GroebnerVerdict::Yes { pairs_reduced: reduced, pairs_skipped: skipped })
    }
}

fn add_term(p: &mut DensePoly, m: Dense, c: i64) -> Result<()> {
    if c == 0 {
        return Ok(());
    }
    let slot = p.entry(m);
    match slot {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get().checked_add(c).ok_or(Error::ArithmeticOverflow)?;
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
    Ok(())
}

fn lead(p: &DensePoly) -> Option<(&Dense, i64)> {
    p.iter().next_back().map(|(m, &c)| (m, c))
}

fn divides(a: &Dense, b: &Dense) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn shifted_add(target: &mut DensePoly, p: &DensePoly, shift: &Dense, factor: i64, skip_lead: bool) -> Result<()> {
    let skip = if skip_lead { p.keys().next_back() } else { None };
    for (m, &c) in p {
        if Some(m) == skip {
            continue;
        }
        let mono: Dense = m.iter().zip(shift).map(|(a, b)| a + b).collect();
        let coef = c.checked_mul(factor).ok_or(Error::ArithmeticOverflow)?;
        add_term(target, mono, coef)?;
    }
    Ok(())
}

fn s_poly(f: &DensePoly, g: &DensePoly) -> Result<Option<DensePoly>> {
    let (Some((lf, cf)), Some((lg, cg))) = (lead(f), lead(g)) else {
        return Ok(Some(DensePoly::new()));
    };
    if lf.iter().zip(lg).all(|(a, b)| *a == 0 || *b == 0) {
        return Ok(None);
    }
    let lcm: Dense = lf.iter().zip(lg).map(|(a, b)| *a.max(b)).collect();
    let sf: Dense = lcm.iter().zip(lf).map(|(l, a)| l - a).collect();
    let sg: Dense = lcm.iter().zip(lg).map(|(l, a)| l - a).collect();
    let mut s = DensePoly::new();
    // cg * sf * f - cf * sg * g; the leads cancel.
    shifted_add(&mut s, f, &sf, cg, true)?;
    shifted_add(&mut s, g, &sg, -cf, true)?;
    Ok(Some(s))
}

fn reduce_dense(mut p: DensePoly, basis: &[DensePoly]) -> Result<DensePoly> {
    let mut rest = DensePoly::new();
    while let Some((m, c)) = p.pop_last() {
        let divisor = basis.iter().find_map(|g| lead(g).filter(|(l, _)| divides(l, &m)).map(|(l, lc)| (g, l.clone(), lc)));
        match divisor {
            None => {
                rest.insert(m, c);
            }
            Some((g, l, lc)) => {
                if c % lc != 0 {
                    rest.insert(m, c);
                    continue;
                }
                let factor = -(c / lc);
                let shift: Dense = m.iter().zip(&l).map(|(a, b)| a - b).collect();
                shifted_add(&mut p, g, &shift, factor, true)?;
            }
        }
    }
    Ok(rest)
}

/// One element of the generating set, in basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    NonFace(Edge),
    Minor(Minor),
}

impl Generator {
    pub fn display(&self, g: &Graph) -> String {
        match self {
            Generator::NonFace(e) => {
                let (u, v) = e.ends();
                format!("{}*{}", g.name(u), g.name(v))
            }
            Generator::Minor(m) => format!(
                "{}*{} - {}*{}",
                g.name(m.first.0),
                g.name(m.first.1),
                g.name(m.second.0),
                g.name(m.second.1)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroebnerVerdict {
    Yes { pairs_reduced: usize, pairs_skipped: usize },
    No { first: usize, second: usize, normal_form: Polynomial },
}

impl GroebnerVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, GroebnerVerdict::Yes { .. })
    }
}

/// Non-faces first, then minors matrix by matrix in column-pair order.
pub fn basis_order(gens: &GeneratorSystem) -> Vec<Generator> {
    gens.non_faces
        .iter()
        .map(|&e| Generator::NonFace(e))
        .chain(gens.minors.iter().map(|&m| Generator::Minor(m)))
        .collect()
}

pub fn buchberger_is_groebner(gens: &GeneratorSystem, order: &VarOrder) -> Result<GroebnerVerdict> {
    let ring = LexRing::new(order.clone());
    let basis: Vec<Polynomial> = basis_order(gens)
        .iter()
        .map(|g| match g {
            Generator::NonFace(e) => {
                let (u, v) = e.ends();
                ring.polynomial(&[(Monomial::product(&[u, v]), 1)])
            }
            Generator::Minor(m) => ring.minor(m),
        })
        .collect::<Result<_>>()?;
    ring.is_groebner(&basis)
}

/// The extended graph with some of its edges removed, viewed as a clique complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialComplex {
    pub graph: Graph,
    pub deleted: Vec<Edge>,
    pub per_matrix: Vec<Vec<Edge>>,
}

fn assemble(ext: &ExtensionSpec, per_matrix: Vec<Vec<Edge>>) -> InitialComplex {
    let mut deleted: Vec<Edge> = per_matrix.iter().flatten().copied().collect();
    deleted.sort_unstable();
    deleted.dedup();
    InitialComplex { graph: ext.graph().without_edges(&deleted), deleted, per_matrix }
}

/// Deletes, for every pair of permuted columns `i < k`, the edge joining top `i` and bottom `k`.
pub fn initial_complex(ext: &ExtensionSpec, perms: &[ColumnPermutation]) -> Result<InitialComplex> {
    let mut per_matrix = Vec::with_capacity(ext.matrices().len());
    for (a, m) in ext.matrices().iter().enumerate() {
        let cols = perms
            .get(a)
            .ok_or_else(|| Error::InvalidPermutation { matrix: a, reason: "missing".into() })?
            .apply(m);
        let mut gone = Vec::new();
        for i in 0..cols.len() {
            for k in i + 1..cols.len() {
                let (t, b) = (cols[i].0, cols[k].1);
                if t == b {
                    return Err(Error::DiagonalLoop(ext.name(t).to_string()));
                }
                gone.push(Edge::new(t, b));
            }
        }
        gone.sort_unstable();
        gone.dedup();
        per_matrix.push(gone);
    }
    Ok(assemble(ext, per_matrix))
}

/// Deletes the supports of the lead terms of all minors under `order`.
pub fn initial_complex_from_order(ext: &ExtensionSpec, order: &VarOrder) -> Result<InitialComplex> {
    let ring = LexRing::new(order.clone());
    let gens = generators(ext);
    let mut per_matrix = vec![Vec::new(); ext.matrices().len()];
    for m in &gens.minors {
        let p = ring.minor(m)?;
        let Some((lead, _)) = p.lead() else { continue };
        if !lead.is_squarefree() {
            return Err(Error::SquareLead { matrix: m.matrix });
        }
        let s = lead.support();
        per_matrix[m.matrix].push(Edge::new(s[0], s[1]));
    }
    for gone in &mut per_matrix {
        gone.sort_unstable();
        gone.dedup();
    }
    Ok(assemble(ext, per_matrix))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(n: usize) -> VarOrder {
        VarOrder::new((0..n).map(Vertex).collect(), n).unwrap()
    }

    fn mono(vs: &[usize]) -> Monomial {
        Monomial::product(&vs.iter().map(|&v| Vertex(v)).collect::<Vec<_>>())
    }

    #[test]
    fn lex_basics() {
        let o = order(3);
        assert_eq!(lex_compare(&o, &mono(&[0]), &mono(&[1, 1, 2])).unwrap(), Ordering::Greater);
        assert_eq!(lex_compare(&o, &mono(&[1, 2]), &mono(&[1, 1])).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&o, &mono(&[2, 1]), &mono(&[1, 2])).unwrap(), Ordering::Equal);
        assert!(lex_compare(&o, &mono(&[3]), &mono(&[0])).is_err());
    }

    #[test]
    fn two_binomials_are_not_a_basis() {
        // x > y > z > u > v > w, basis {xy - uv, yz - uw}.
        let (x, y, z, u, v, w) = (0, 1, 2, 3, 4, 5);
        let ring = LexRing::new(order(6));
        let f = ring.polynomial(&[(mono(&[x, y]), 1), (mono(&[u, v]), -1)]).unwrap();
        let g = ring.polynomial(&[(mono(&[y, z]), 1), (mono(&[u, w]), -1)]).unwrap();
        let SPolynomial::Value(s) = ring.s_polynomial(&f, &g).unwrap() else { panic!("leads share y") };
        let nf = ring.reduce(&s, &[f.clone(), g.clone()]).unwrap();
        let expected = ring.polynomial(&[(mono(&[x, u, w]), 1), (mono(&[z, u, v]), -1)]).unwrap();
        assert_eq!(nf, expected);
        assert!(!ring.is_groebner(&[f, g]).unwrap().is_yes());
    }

    #[test]
    fn coprime_leads_skip() {
        let ring = LexRing::new(order(4));
        let f = ring.polynomial(&[(mono(&[0, 1]), 1)]).unwrap();
        let g = ring.polynomial(&[(mono(&[2, 3]), 1), (mono(&[3, 3]), -1)]).unwrap();
        assert_eq!(ring.s_polynomial(&f, &g).unwrap(), SPolynomial::Skipped);
    }

    #[test]
    fn twisted_cubic_minors_form_a_basis() {
        // Minors of (a b c; b c d) with a > b > c > d.
        let ring = LexRing::new(order(4));
        let ms = [
            [[0, 2], [1, 1]],
            [[0, 3], [1, 2]],
            [[1, 3], [2, 2]],
        ];
        let basis: Vec<Polynomial> = ms
            .iter()
            .map(|[p, q]| ring.polynomial(&[(mono(p), 1), (mono(q), -1)]).unwrap())
            .collect();
        assert!(ring.is_groebner(&basis).unwrap().is_yes());
    }

    #[test]
    fn reduction_cancels_multiples() {
        let ring = LexRing::new(order(3));
        let g = ring.polynomial(&[(mono(&[0]), 1), (mono(&[1]), -1)]).unwrap();
        let p = ring.polynomial(&[(mono(&[0, 0]), 1), (mono(&[1, 1]), -1)]).unwrap();
        assert!(ring.reduce(&p, &[g]).unwrap().is_zero());
    }
}
