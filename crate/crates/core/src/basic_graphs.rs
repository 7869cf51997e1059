//! Basic graphs of Betti number 2: the nine-entry catalog, their generating
//! functions `J_B`, the diagonal form `Y^L / (g (1 − Y²)^M)`, and its partial
//! fraction decomposition at `Y = ±1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{rat, rat_int, Rational};
use crate::error::{Error, Result};
use crate::gf::{f_closed, GfWorkspace};
use crate::poly::Poly;
use crate::report::{Check, Report};
use crate::series::{BiSeries, UniSeries};

/// Multigraph obtained by contracting every path of a basic graph to an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultigraphClass {
    /// Two loops at one vertex.
    FigureEight,
    /// Two loops joined by an edge.
    Dumbbell,
    /// Three parallel edges.
    Theta,
}

/// Combinatorial descriptor of a basic graph.
///
/// `a1`, `a2` count α-cycles hanging at a special point of `V₁` resp. `V₂`;
/// `b1`, `b2` count β-paths (both ends in `V₁` resp. `V₂`); `c` and `d` count
/// γ- and δ-paths between the sides, `e` counts δ-edges; `r_sp`, `s_sp` are
/// the special points in each side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicGraphSpec {
    pub id: u32,
    pub k: u32,
    pub a1: u32,
    pub a2: u32,
    pub b1: u32,
    pub b2: u32,
    pub c: u32,
    pub d: u32,
    pub e: u32,
    pub r_sp: u32,
    pub s_sp: u32,
    pub v1: u32,
    pub v2: u32,
    pub g: u32,
    pub class: MultigraphClass,
}

impl BasicGraphSpec {
    pub fn n_sp(&self) -> u32 {
        self.r_sp + self.s_sp
    }

    /// Exponent of `1/(1 − W)` in `J_B`: `N_sp + k − 1 − e`.
    pub fn w_exponent(&self) -> u32 {
        self.n_sp() + self.k - 1 - self.e
    }

    /// `M = a1 + a2 + b1 + b2 + c + d`.
    pub fn m(&self) -> u32 {
        self.a1 + self.a2 + self.b1 + self.b2 + self.c + self.d
    }

    /// `L = M + r_sp + s_sp + 2a1 + 2a2 − c + d`.
    pub fn l(&self) -> u32 {
        self.m() + self.n_sp() + 2 * self.a1 + 2 * self.a2 + self.d - self.c
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |why: String| {
            Err(Error::Precondition(format!(
                "basic graph {}: {why}",
                self.id
            )))
        };
        if self.k == 0 {
            return fail("Betti number must be positive".into());
        }
        if self.g == 0 {
            return fail("automorphism count must be positive".into());
        }
        if self.n_sp() > 2 * (self.k - 1) {
            return fail(format!("{} special points exceed 2(k−1)", self.n_sp()));
        }
        let parts = self.m() + self.e;
        if parts != self.n_sp() + self.k - 1 {
            return fail(format!("{parts} cycles/paths/edges, expected N_sp + k − 1"));
        }
        if parts > 3 * (self.k - 1) {
            return fail(format!("{parts} cycles/paths/edges exceed 3(k−1)"));
        }
        let v1 = self.r_sp + self.a1 + 2 * self.a2 + self.b2 + self.d;
        let v2 = self.s_sp + 2 * self.a1 + self.a2 + self.b1 + self.d;
        if (v1, v2) != (self.v1, self.v2) {
            return fail(format!(
                "sides ({}, {}) but structure gives ({v1}, {v2})",
                self.v1, self.v2
            ));
        }
        // Minimal realisation: α-cycles have 4 edges, β-paths 2, γ 1, δ 3.
        let edges =
            4 * (self.a1 + self.a2) + 2 * (self.b1 + self.b2) + self.c + 3 * self.d + self.e;
        if edges != self.v1 + self.v2 + self.k - 1 {
            return fail(format!("{edges} edges do not give Betti number {}", self.k));
        }
        if self.v1.abs_diff(self.v2) > self.k - 1 {
            return fail("sides differ by more than k − 1".into());
        }
        if self.c > 0 && (self.r_sp == 0 || self.s_sp == 0) {
            return fail("a γ-path needs special points on both sides".into());
        }
        Ok(())
    }

    /// The same graph with the two sides exchanged.
    pub fn mirror(&self) -> Self {
        Self {
            a1: self.a2,
            a2: self.a1,
            b1: self.b2,
            b2: self.b1,
            r_sp: self.s_sp,
            s_sp: self.r_sp,
            v1: self.v2,
            v2: self.v1,
            ..self.clone()
        }
    }
}

#[allow(clippy::too_many_arguments)]
const fn spec(
    id: u32,
    (r_sp, s_sp): (u32, u32),
    [a1, a2, b1, b2, c, d, e]: [u32; 7],
    (v1, v2): (u32, u32),
    g: u32,
    class: MultigraphClass,
) -> BasicGraphSpec {
    BasicGraphSpec {
        id,
        k: 2,
        a1,
        a2,
        b1,
        b2,
        c,
        d,
        e,
        r_sp,
        s_sp,
        v1,
        v2,
        g,
        class,
    }
}

/// The nine basic graphs with Betti number 2.
pub fn bg2_catalog() -> Vec<BasicGraphSpec> {
    use MultigraphClass::*;
    vec![
        spec(1, (1, 0), [2, 0, 0, 0, 0, 0, 0], (3, 4), 8, FigureEight),
        spec(2, (0, 1), [0, 2, 0, 0, 0, 0, 0], (4, 3), 8, FigureEight),
        spec(3, (2, 0), [2, 0, 1, 0, 0, 0, 0], (4, 5), 8, Dumbbell),
        spec(4, (2, 0), [0, 0, 3, 0, 0, 0, 0], (2, 3), 12, Theta),
        spec(5, (0, 2), [0, 2, 0, 1, 0, 0, 0], (5, 4), 8, Dumbbell),
        spec(6, (0, 2), [0, 0, 0, 3, 0, 0, 0], (3, 2), 12, Theta),
        spec(7, (1, 1), [0, 0, 0, 0, 0, 3, 0], (4, 4), 6, Theta),
        spec(8, (1, 1), [0, 0, 0, 0, 0, 2, 1], (3, 3), 2, Theta),
        spec(9, (1, 1), [1, 1, 0, 0, 1, 0, 0], (4, 4), 4, Dumbbell),
    ]
}

/// The nine terms `T_x^{v1} T_y^{v2} / (g (1 − W)^m)` of `F_2`, as
/// `(v1, v2, g, m)`.
pub const BG2_TERMS: [(u32, u32, u32, u32); 9] = [
    (3, 4, 8, 2),
    (4, 3, 8, 2),
    (4, 5, 8, 3),
    (2, 3, 12, 3),
    (5, 4, 8, 3),
    (3, 2, 12, 3),
    (4, 4, 6, 3),
    (3, 3, 2, 2),
    (4, 4, 4, 3),
];

/// `J_B = T_x^{v1} T_y^{v2} / (g (1 − W)^{N_sp + k − 1 − e})`.
pub fn j_series(spec: &BasicGraphSpec, ws: &GfWorkspace) -> Result<BiSeries> {
    spec.validate()?;
    let inv = ws.w.geom_inv()?;
    Ok(ws
        .tx
        .pow(spec.v1)
        .mul(&ws.ty.pow(spec.v2))
        .mul(&inv.pow(spec.w_exponent()))
        .scale(&rat(1, spec.g as i64)))
}

/// `(L, M, g)` with `J_B(x, x) = Y^L / (g (1 − Y²)^M)`.
pub fn j_diagonal(spec: &BasicGraphSpec) -> Result<(u32, u32, u32)> {
    spec.validate()?;
    Ok((spec.l(), spec.m(), spec.g))
}

/// `Y^L / (g (1 − Y²)^M)` as a power series in `x`, through `Y(x)`.
pub fn j_diagonal_series(spec: &BasicGraphSpec, trunc: usize) -> Result<UniSeries> {
    let (l, m, g) = j_diagonal(spec)?;
    let y = crate::diag::y_series(trunc);
    let y2 = y.mul(&y);
    Ok(y.pow(l)
        .mul(&y2.geom_inv()?.pow(m))
        .scale(&rat(1, g as i64)))
}

/// `Σ_i a_i/(1−Y)^i + Σ_i b_i/(1+Y)^i + cpoly(Y)`, with `a`, `b` indexed
/// from 1 (slot 0 unused).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFraction {
    pub m: u32,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub cpoly: Poly,
}

impl PartialFraction {
    /// The numerator over `(1 − Y²)^M` that this decomposition represents.
    pub fn recombine(&self) -> Poly {
        let m = self.m;
        let one_minus = Poly::from_ints(&[1, -1]);
        let one_plus = Poly::from_ints(&[1, 1]);
        let mut acc = self.cpoly.mul(&Poly::from_ints(&[1, 0, -1]).pow(m));
        for i in 1..=m {
            let ai = Poly::constant(self.a[i as usize].clone());
            acc = acc.add(&ai.mul(&one_minus.pow(m - i)).mul(&one_plus.pow(m)));
            let bi = Poly::constant(self.b[i as usize].clone());
            acc = acc.add(&bi.mul(&one_plus.pow(m - i)).mul(&one_minus.pow(m)));
        }
        acc
    }
}

/// Decompose `numer / (1 − Y²)^M` at the poles `Y = ±1`.
///
/// Near `Y = 1` put `u = 1 − Y`: the proper part is
/// `rem(1 − u) / (u^M (2 − u)^M)`, so `a_{M−j}` is the `u^j` coefficient of
/// `rem(1 − u)/(2 − u)^M`. The pole at `−1` is handled the same way with
/// `v = 1 + Y`.
pub fn partial_fraction(numer: &Poly, m: u32) -> Result<PartialFraction> {
    if m == 0 {
        return Err(Error::Precondition(
            "denominator (1 − Y²)^M needs M ≥ 1".into(),
        ));
    }
    let den = Poly::from_ints(&[1, 0, -1]).pow(m);
    let (cpoly, rem) = numer.div_rem(&den)?;
    let mu = m as usize;
    let two_minus = Poly::from_ints(&[2, -1]).pow(m);
    let e = rem
        .compose(&Poly::from_ints(&[1, -1]))
        .series_div(&two_minus, mu)?;
    let f = rem
        .compose(&Poly::from_ints(&[-1, 1]))
        .series_div(&two_minus, mu)?;
    let mut a = vec![Rational::zero(); mu + 1];
    let mut b = vec![Rational::zero(); mu + 1];
    for j in 0..mu {
        a[mu - j] = e[j].clone();
        b[mu - j] = f[j].clone();
    }
    Ok(PartialFraction { m, a, b, cpoly })
}

/// Partial fractions of `Y^L / (g (1 − Y²)^M)` for a catalog entry.
pub fn spec_partial_fraction(spec: &BasicGraphSpec) -> Result<PartialFraction> {
    let (l, m, g) = j_diagonal(spec)?;
    partial_fraction(&Poly::monomial(l as usize, rat(1, g as i64)), m)
}

fn bi_same(name: &str, lhs: &BiSeries, rhs: &BiSeries) -> Check {
    match lhs.first_difference(rhs) {
        None => Check::pass(name),
        Some((r, s)) => Check::fail(name, format!("first discrepancy at x^{r} y^{s}")),
    }
}

/// Catalog validity, `Σ J_B = F_2` at `trunc`, the diagonal form of every
/// `J_B`, mirror symmetry and the leading partial fraction coefficients.
pub fn bg2_check(trunc: usize) -> Report {
    let mut rep = Report::new("bg2");
    let cat = bg2_catalog();
    let invalid: Vec<String> = cat
        .iter()
        .filter_map(|s| s.validate().err().map(|e| e.to_string()))
        .collect();
    rep.push(Check::from_bool(
        "catalog entries satisfy the basic-graph constraints",
        invalid.is_empty(),
        || invalid.join("; "),
    ));
    let terms: Vec<_> = cat
        .iter()
        .map(|s| (s.v1, s.v2, s.g, s.w_exponent()))
        .collect();
    rep.push(Check::from_bool(
        "catalog reproduces the nine J_B terms",
        terms == BG2_TERMS,
        || format!("{terms:?}"),
    ));
    let m_from_exponent = cat
        .iter()
        .all(|s| s.m() == s.w_exponent() && s.l() == s.v1 + s.v2);
    rep.push(Check::from_bool(
        "M = N_sp + k - 1 - e and L = v1 + v2",
        m_from_exponent,
        || "mismatch".into(),
    ));

    let ws = match GfWorkspace::build(trunc) {
        Ok(ws) => ws,
        Err(e) => {
            rep.push(Check::fail("workspace", e.to_string()));
            return rep;
        }
    };
    let js: Result<Vec<BiSeries>> = cat.iter().map(|s| j_series(s, &ws)).collect();
    let js = match js {
        Ok(v) => v,
        Err(e) => {
            rep.push(Check::fail("J_B series", e.to_string()));
            return rep;
        }
    };
    let total = js
        .iter()
        .fold(BiSeries::zero(trunc, trunc), |acc, j| acc.add(j));
    match f_closed(&ws, 2) {
        Ok(f2) => rep.push(bi_same(
            &format!("sum of J_B = F2, trunc {trunc}"),
            &total,
            &f2,
        )),
        Err(e) => rep.push(Check::fail("F2 closed form", e.to_string())),
    }
    let mirrors_ok = cat.iter().zip(&js).all(|(s, j)| {
        j_series(&s.mirror(), &ws)
            .map(|m| m == j.transpose())
            .unwrap_or(false)
    });
    rep.push(Check::from_bool(
        "mirrored spec gives the transposed J_B",
        mirrors_ok,
        || "mismatch".into(),
    ));
    let diag_ok =
        cat.iter()
            .zip(&js)
            .all(|(s, j)| match (j.diagonal(), j_diagonal_series(s, trunc)) {
                (Ok(d), Ok(e)) => d == e,
                _ => false,
            });
    rep.push(Check::from_bool(
        "J_B(x,x) = Y^L/(g (1-Y^2)^M) for every entry",
        diag_ok,
        || "mismatch".into(),
    ));

    let mut pf_bad = Vec::new();
    for s in &cat {
        let pf = match spec_partial_fraction(s) {
            Ok(pf) => pf,
            Err(e) => {
                pf_bad.push(format!("{}: {e}", s.id));
                continue;
            }
        };
        let scale = rat(1, s.g as i64) / rat_int(BigInt::from(2u32).pow(s.m()));
        let sign = if s.l() % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let mu = s.m() as usize;
        if pf.a[mu] != scale || pf.b[mu] != sign * &scale {
            pf_bad.push(format!("{}: a_M={} b_M={}", s.id, pf.a[mu], pf.b[mu]));
        }
        if pf.recombine() != Poly::monomial(s.l() as usize, rat(1, s.g as i64)) {
            pf_bad.push(format!("{}: recombination differs", s.id));
        }
    }
    rep.push(Check::from_bool(
        "a_M = 1/(g 2^M), b_M = (-1)^L/(g 2^M), recombination exact",
        pf_bad.is_empty(),
        || pf_bad.join("; "),
    ));
    rep
}

/// Per multigraph class with `M = 3`: `Σ b_3 = 0` and `Σ a_3 = ½ · 1/g_id`,
/// where `g_id` belongs to the class member with every special point in `V₁`.
pub fn class_sum_checks() -> Report {
    let mut rep = Report::new("class-sums");
    let cat = bg2_catalog();
    for (class, label) in [
        (MultigraphClass::Dumbbell, "dumbbell"),
        (MultigraphClass::Theta, "theta"),
    ] {
        let members: Vec<&BasicGraphSpec> = cat
            .iter()
            .filter(|s| s.class == class && s.m() == 3)
            .collect();
        let pfs: Result<Vec<PartialFraction>> =
            members.iter().map(|s| spec_partial_fraction(s)).collect();
        let pfs = match pfs {
            Ok(p) => p,
            Err(e) => {
                rep.push(Check::fail(format!("{label} class"), e.to_string()));
                continue;
            }
        };
        let sum_a: Rational = pfs.iter().map(|p| p.a[3].clone()).sum();
        let sum_b: Rational = pfs.iter().map(|p| p.b[3].clone()).sum();
        let ids: Vec<u32> = members.iter().map(|s| s.id).collect();
        rep.push(Check::from_bool(
            format!("{label} {ids:?}: sum b_3 = 0"),
            sum_b.is_zero(),
            || sum_b.to_string(),
        ));
        let g_id = members.iter().find(|s| s.s_sp == 0).map(|s| s.g);
        match g_id {
            Some(g) => {
                let want = rat(1, 2 * g as i64);
                let ok = sum_a == want;
                rep.push(
                    Check::from_bool(format!("{label} {ids:?}: sum a_3 = 1/(2 g_id)"), ok, || {
                        format!("{sum_a} vs {want}")
                    })
                    .with_note(format!("sum a_3 = {sum_a}")),
                );
            }
            None => rep.push(Check::fail(
                format!("{label}: representative"),
                "no member with s_sp = 0",
            )),
        }
    }
    rep
}

/// The catalog as pretty-printed JSON.
pub fn catalog_json() -> String {
    serde_json::to_string_pretty(&bg2_catalog()).expect("catalog serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_examples() {
        let cat = bg2_catalog();
        assert_eq!(cat.len(), 9);
        assert_eq!((cat[0].v1, cat[0].v2, cat[0].g), (3, 4, 8));
        assert_eq!((cat[3].v1, cat[3].v2, cat[3].g), (2, 3, 12));
        for s in &cat {
            s.validate().unwrap();
            s.mirror().validate().unwrap();
        }
    }

    #[test]
    fn validator_rejects_bad_specs() {
        let mut s = bg2_catalog()[0].clone();
        s.v1 += 1;
        assert!(s.validate().is_err());
        let mut s = bg2_catalog()[2].clone();
        s.r_sp = 3;
        assert!(s.validate().is_err());
        let mut s = bg2_catalog()[6].clone();
        s.g = 0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn diagonal_exponents() {
        let cat = bg2_catalog();
        assert_eq!(j_diagonal(&cat[2]).unwrap(), (9, 3, 8));
        assert_eq!(j_diagonal(&cat[0]).unwrap().1, 2);
        assert_eq!(j_diagonal(&cat[7]).unwrap().1, 2);
        assert_eq!(cat[7].e, 1);
    }

    #[test]
    fn partial_fraction_examples() {
        let pf = partial_fraction(&Poly::one(), 1).unwrap();
        assert_eq!(pf.a[1], rat(1, 2));
        assert_eq!(pf.b[1], rat(1, 2));
        assert!(pf.cpoly.is_zero());
        let pf = spec_partial_fraction(&bg2_catalog()[2]).unwrap();
        assert_eq!(pf.a[3], rat(1, 64));
        assert_eq!(pf.b[3], rat(-1, 64));
        assert!(partial_fraction(&Poly::one(), 0).is_err());
    }

    #[test]
    fn partial_fraction_recombines() {
        let numer = Poly::from_ints(&[3, -1, 4, 1, -5, 9, 2, 6, -5, 3]);
        for m in 1..=4 {
            assert_eq!(partial_fraction(&numer, m).unwrap().recombine(), numer);
        }
    }

    #[test]
    fn first_entry_support() {
        let ws = GfWorkspace::build(8).unwrap();
        let j = j_series(&bg2_catalog()[0], &ws).unwrap();
        for r in 0..=8 {
            for s in 0..=8 {
                if r < 3 || s < 4 {
                    assert!(j.coeff(r, s).is_zero());
                }
            }
        }
        assert!(!j.coeff(3, 4).is_zero());
    }

    #[test]
    fn small_truncation_suites() {
        let rep = bg2_check(7);
        assert!(rep.all_passed(), "{rep}");
        let rep = class_sum_checks();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn catalog_exports() {
        let json = catalog_json();
        assert!(json.contains("\"class\": \"figure-eight\""));
        assert!(json.contains("\"g\": 12"));
    }
}
