//! The polynomial ring on segments, in the standard basis `π(a)` and the
//! irreducible basis `L_a`, with the partial derivatives `𝒟^i` and `ⁱ𝒟`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multiplicity::mult_matrix;
use crate::multisegment::Multisegment;
use crate::segment::Segment;
use crate::truncation::{descent_set, truncate_end, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    /// Products `π(a)` of segments.
    #[serde(rename = "pi")]
    Pi,
    /// Irreducibles `L_a`.
    #[serde(rename = "L")]
    L,
}

/// A finite integer combination of basis elements indexed by multisegments.
/// Zero coefficients are never stored; the empty multisegment is the unit.
#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    basis: Basis,
    terms: BTreeMap<Multisegment, i64>,
}

impl RingElement {
    pub fn zero(basis: Basis) -> Self {
        RingElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        RingElement::pi(Multisegment::empty())
    }

    pub fn pi(a: Multisegment) -> Self {
        RingElement::monomial(Basis::Pi, a, 1)
    }

    pub fn l(a: Multisegment) -> Self {
        RingElement::monomial(Basis::L, a, 1)
    }

    pub fn monomial(basis: Basis, a: Multisegment, coeff: i64) -> Self {
        let mut x = RingElement::zero(basis);
        x.add_term(a, coeff);
        x
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Multisegment, i64)>) -> Self {
        let mut x = RingElement::zero(basis);
        for (a, c) in terms {
            x.add_term(a, c);
        }
        x
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multisegment, i64)> {
        self.terms.iter().map(|(a, &c)| (a, c))
    }

    pub fn coefficient(&self, a: &Multisegment) -> i64 {
        self.terms.get(a).copied().unwrap_or(0)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Multisegment, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(a).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    fn same_basis(&self, other: &RingElement) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Domain(format!(
                "cannot combine {:?}-basis and {:?}-basis elements",
                self.basis, other.basis
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_basis(other)?;
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> RingElement {
        RingElement::from_terms(self.basis, self.terms().map(|(a, c)| (a.clone(), k * c)))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.add(&other.scale(-1))
    }

    fn require_pi(&self, op: &str) -> Result<()> {
        if self.basis != Basis::Pi {
            return Err(Error::Domain(format!("{op} needs a pi-basis element")));
        }
        Ok(())
    }
}

/// Bilinear extension of the union of multisegments.
pub fn product(x: &RingElement, y: &RingElement) -> Result<RingElement> {
    x.require_pi("product")?;
    y.require_pi("product")?;
    let mut out = RingElement::zero(Basis::Pi);
    for (a, c) in x.terms() {
        for (b, d) in y.terms() {
            out.add_term(a.union(b), c * d);
        }
    }
    Ok(out)
}

/// Applies the algebra morphism sending each segment `Δ` to `Δ + Δ'` when
/// `shrink(Δ)` returns `Some(Δ')`, a vanished segment contributing the unit.
fn derive_with(
    x: &RingElement,
    shrink: impl Fn(&Segment) -> Option<Option<Segment>>,
) -> RingElement {
    let mut out = RingElement::zero(Basis::Pi);
    for (a, c) in x.terms() {
        // Expand the product factor by factor.
        let mut partial: BTreeMap<Vec<Segment>, i64> = BTreeMap::from([(Vec::new(), c)]);
        for s in a {
            let mut next = BTreeMap::new();
            for (segs, k) in partial {
                if let Some(shrunk) = shrink(s) {
                    let mut alt = segs.clone();
                    alt.extend(shrunk);
                    *next.entry(alt).or_insert(0) += k;
                }
                let mut kept = segs;
                kept.push(*s);
                *next.entry(kept).or_insert(0) += k;
            }
            partial = next;
        }
        for (segs, k) in partial {
            out.add_term(Multisegment::new(segs), k);
        }
    }
    out
}

/// `𝒟^i`: each segment ending at `i` also contributes itself shortened.
pub fn derivative_end(x: &RingElement, i: i64) -> Result<RingElement> {
    x.require_pi("derivative")?;
    Ok(derive_with(x, |s| (s.end() == i).then(|| s.shrink_end())))
}

/// `ⁱ𝒟`: each segment beginning at `i` also contributes itself shortened.
pub fn derivative_begin(x: &RingElement, i: i64) -> Result<RingElement> {
    x.require_pi("derivative")?;
    Ok(derive_with(x, |s| (s.begin() == i).then(|| s.shrink_begin())))
}

pub fn derivative(x: &RingElement, side: Side, i: i64) -> Result<RingElement> {
    match side {
        Side::End => derivative_end(x, i),
        Side::Begin => derivative_begin(x, i),
    }
}

/// `𝒟^c` or `^c𝒟`.
///
/// End side: the `⪯`-largest segment of `c` acts first, and `𝒟^{[i,j]}`
/// applies `i, i+1, …, j`. Begin side: the `⪯`-smallest segment acts
/// first, and `^{[i,j]}𝒟` applies `j, j-1, …, i`.
pub fn derivative_composite(x: &RingElement, c: &Multisegment, side: Side) -> Result<RingElement> {
    x.require_pi("derivative")?;
    let order: Vec<&Segment> = match side {
        Side::End => c.iter().rev().collect(),
        Side::Begin => c.iter().collect(),
    };
    let mut out = x.clone();
    for s in order {
        let steps: Vec<i64> = match side {
            Side::End => (s.begin()..=s.end()).collect(),
            Side::Begin => (s.begin()..=s.end()).rev().collect(),
        };
        for k in steps {
            out = derivative(&out, side, k)?;
        }
    }
    Ok(out)
}

/// `π(a) = Σ_b m(b, a) L_b`, extended linearly.
pub fn to_l_basis(x: &RingElement) -> Result<RingElement> {
    x.require_pi("conversion to the L basis")?;
    let mut out = RingElement::zero(Basis::L);
    for (a, c) in x.terms() {
        for (b, &m) in mult_matrix(a)?.iter() {
            out.add_term(b.clone(), c * m as i64);
        }
    }
    Ok(out)
}

/// Inverse of [`to_l_basis`] by back-substitution.
///
/// The term with the smallest `Σ len²` is maximal among the remaining ones,
/// so its coefficient in the `π` expansion is its current coefficient.
pub fn to_pi_basis(x: &RingElement) -> Result<RingElement> {
    if x.basis == Basis::Pi {
        return Err(Error::Domain("conversion to the pi basis needs an L-basis element".into()));
    }
    let mut rest = x.clone();
    let mut out = RingElement::zero(Basis::Pi);
    while let Some((top, c)) = rest
        .terms()
        .min_by_key(|(a, _)| (a.potential(), (*a).clone()))
        .map(|(a, c)| (a.clone(), c))
    {
        let expansion = to_l_basis(&RingElement::pi(top.clone()))?.scale(c);
        rest = rest.sub(&expansion)?;
        if rest.coefficient(&top) != 0 {
            return Err(Error::invariant(format!("back-substitution stalled at {top}")));
        }
        out.add_term(top, c);
    }
    Ok(out)
}

/// Compares `π(a^(k))` with `Σ_{c ∈ S(a)_k} m(c, a) L_{c^(k)}` in the `L` basis.
pub fn check_eq2(a: &Multisegment, k: i64) -> Result<bool> {
    let lhs = to_l_basis(&RingElement::pi(truncate_end(a, k)))?;
    let matrix = mult_matrix(a)?;
    let mut rhs = RingElement::zero(Basis::L);
    for c in descent_set(a, k)? {
        let m = matrix
            .get(&c)
            .copied()
            .ok_or_else(|| Error::invariant(format!("{c} missing from the matrix of {a}")))?;
        rhs.add_term(truncate_end(&c, k), m as i64);
    }
    Ok(lhs == rhs)
}

/// `𝒟^i(L_a)` or `ⁱ𝒟(L_a)` in the `L` basis; every coefficient is
/// nonnegative.
pub fn derivative_l(a: &Multisegment, i: i64, side: Side) -> Result<RingElement> {
    let pi = to_pi_basis(&RingElement::l(a.clone()))?;
    let out = to_l_basis(&derivative(&pi, side, i)?)?;
    if let Some((b, c)) = out.terms().find(|&(_, c)| c < 0) {
        return Err(Error::invariant(format!(
            "derivative of L_{a} at {i} has coefficient {c} at L_{b}"
        )));
    }
    Ok(out)
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let name = match self.basis {
            Basis::Pi => "pi",
            Basis::L => "L",
        };
        for (n, (a, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if n > 0 { "+" } else { "" };
            if n > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if n > 0 {
                f.write_str(" ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{name}{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: i64,
    multisegment: Multisegment,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    basis: Basis,
    terms: Vec<TermRepr>,
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            basis: self.basis,
            terms: self
                .terms()
                .map(|(a, c)| TermRepr {
                    coeff: c,
                    multisegment: a.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(deserializer)?;
        Ok(RingElement::from_terms(
            repr.basis,
            repr.terms.into_iter().map(|t| (t.multisegment, t.coeff)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(s: &str) -> Multisegment {
        s.parse().unwrap()
    }

    fn pi(s: &str) -> RingElement {
        RingElement::pi(ms(s))
    }

    fn l(s: &str) -> RingElement {
        RingElement::l(ms(s))
    }

    fn sum(xs: &[RingElement]) -> RingElement {
        xs.iter()
            .fold(RingElement::zero(xs[0].basis()), |acc, x| acc.add(x).unwrap())
    }

    #[test]
    fn products() {
        assert_eq!(product(&pi("{[1]}"), &pi("{[2]}")).unwrap(), pi("{[1],[2]}"));
        assert_eq!(product(&RingElement::one(), &pi("{[1,3]}")).unwrap(), pi("{[1,3]}"));
        let x = sum(&[pi("{[1,2]}"), pi("{[3]}")]);
        assert_eq!(
            product(&x, &pi("{[2]}")).unwrap(),
            sum(&[pi("{[1,2],[2]}"), pi("{[2],[3]}")])
        );
        assert!(product(&l("{[1]}"), &pi("{[2]}")).is_err());
    }

    #[test]
    fn end_derivatives() {
        assert_eq!(
            derivative_end(&pi("{[1,2]}"), 2).unwrap(),
            sum(&[pi("{[1,2]}"), pi("{[1]}")])
        );
        assert_eq!(
            derivative_end(&pi("{[1]}"), 1).unwrap(),
            sum(&[pi("{[1]}"), RingElement::one()])
        );
        assert_eq!(derivative_end(&pi("{[1,2]}"), 3).unwrap(), pi("{[1,2]}"));
        // Multiplicative: two factors ending at 2 expand into four terms.
        assert_eq!(
            derivative_end(&pi("{[2],[1,2]}"), 2).unwrap(),
            sum(&[pi("{[2],[1,2]}"), pi("{[1,2]}"), pi("{[2],[1]}"), pi("{[1]}")])
        );
    }

    #[test]
    fn begin_derivatives() {
        assert_eq!(
            derivative_begin(&pi("{[1,2]}"), 1).unwrap(),
            sum(&[pi("{[1,2]}"), pi("{[2]}")])
        );
        assert_eq!(
            derivative_begin(&pi("{[1]}"), 1).unwrap(),
            sum(&[pi("{[1]}"), RingElement::one()])
        );
        assert_eq!(derivative_begin(&pi("{[1,2]}"), 0).unwrap(), pi("{[1,2]}"));
    }

    #[test]
    fn composites() {
        assert_eq!(
            derivative_composite(&pi("{[1,2]}"), &ms("{[1,2]}"), Side::End).unwrap(),
            sum(&[pi("{[1,2]}"), pi("{[1]}")])
        );
        let x = pi("{[1,3],[2]}");
        assert_eq!(derivative_composite(&x, &Multisegment::empty(), Side::End).unwrap(), x);
        assert_eq!(
            derivative_composite(&x, &ms("{[2]}"), Side::Begin).unwrap(),
            derivative_begin(&x, 2).unwrap()
        );
        // Order matters: 3 then 2 reaches [1] from [1,3], 2 then 3 does not.
        let y = pi("{[1,3]}");
        let both = derivative_composite(&y, &ms("{[2,3]}"), Side::End).unwrap();
        assert_eq!(both, sum(&[pi("{[1,3]}"), pi("{[1,2]}")]));
        let both = derivative_composite(&y, &ms("{[2],[3]}"), Side::End).unwrap();
        assert_eq!(both, sum(&[pi("{[1,3]}"), pi("{[1,2]}"), pi("{[1]}")]));
    }

    #[test]
    fn basis_changes() {
        assert_eq!(
            to_l_basis(&pi("{[1],[2]}")).unwrap(),
            sum(&[l("{[1],[2]}"), l("{[1,2]}")])
        );
        assert_eq!(to_l_basis(&pi("{[1,4]}")).unwrap(), l("{[1,4]}"));
        let x = to_l_basis(&pi("{[1],[2],[2],[3]}")).unwrap();
        assert_eq!(x.coefficient(&ms("{[1,2],[2,3]}")), 2);
        assert_eq!(to_pi_basis(&x).unwrap(), pi("{[1],[2],[2],[3]}"));
        assert_eq!(
            to_pi_basis(&l("{[1],[2]}")).unwrap(),
            sum(&[pi("{[1],[2]}"), pi("{[1,2]}").scale(-1)])
        );
    }

    #[test]
    fn truncation_identity() {
        assert!(check_eq2(&ms("{[1],[2]}"), 2).unwrap());
        assert!(check_eq2(&ms("{[1,3],[2]}"), 5).unwrap());
        for k in 0..5 {
            assert!(check_eq2(&ms("{[1],[2],[2],[3]}"), k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn positive_derivatives() {
        assert_eq!(
            derivative_l(&ms("{[1,2]}"), 2, Side::End).unwrap(),
            sum(&[l("{[1,2]}"), l("{[1]}")])
        );
        // L_{[1],[2]} = π([1])π([2]) − π([1,2]), and the two π([1]) terms
        // produced by 𝒟² cancel.
        assert_eq!(
            derivative_l(&ms("{[1],[2]}"), 2, Side::End).unwrap(),
            l("{[1],[2]}")
        );
        assert_eq!(
            derivative_l(&ms("{[3]}"), 3, Side::Begin).unwrap(),
            sum(&[l("{[3]}"), RingElement::l(Multisegment::empty())])
        );
    }

    #[test]
    fn json_round_trip() {
        let x = sum(&[pi("{[1,2]}"), pi("{[3]}").scale(-2)]);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(
            text,
            r#"{"basis":"pi","terms":[{"coeff":1,"multisegment":{"segments":[[1,2]]}},{"coeff":-2,"multisegment":{"segments":[[3,3]]}}]}"#
        );
        assert_eq!(serde_json::from_str::<RingElement>(&text).unwrap(), x);
        let y: RingElement = serde_json::from_str(r#"{"basis":"L","terms":[]}"#).unwrap();
        assert!(y.is_zero());
    }
}
