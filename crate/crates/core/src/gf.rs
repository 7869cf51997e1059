//! Generating functions of the census: the tree series `T` and its Euler
//! derivatives, the closed forms `F_1..F_4`, an order-by-order solver for the
//! linear PDE linking `F_k` to `F_{k+1}`, and the algebraic identities these
//! series satisfy.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{rat, rat_int, Rational};
use crate::census::spanning_tree_count;
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::series::{BiSeries, RationalZWExpr, ZWTerm};

/// `T = F_0` together with `T_x = D_x T`, `T_y = D_y T`, `Z = T_x + T_y`,
/// `W = T_x T_y` and `T_xy = D_x D_y T`, all truncated at `trunc`.
#[derive(Clone, Debug)]
pub struct GfWorkspace {
    pub trunc: usize,
    pub t: BiSeries,
    pub tx: BiSeries,
    pub ty: BiSeries,
    pub z: BiSeries,
    pub w: BiSeries,
    pub txy: BiSeries,
}

impl GfWorkspace {
    pub fn build(trunc: usize) -> Result<Self> {
        if trunc == 0 {
            return Err(Error::Precondition("truncation must be at least 1".into()));
        }
        let t = BiSeries::from_counts(trunc, trunc, |r, s| {
            BigInt::from(spanning_tree_count(r as u64, s as u64))
        });
        let tx = t.euler_x();
        let ty = t.euler_y();
        let z = tx.add(&ty);
        let w = tx.mul(&ty);
        let txy = tx.euler_y();
        Ok(Self {
            trunc,
            t,
            tx,
            ty,
            z,
            w,
            txy,
        })
    }

    pub fn txx(&self) -> BiSeries {
        self.tx.euler_x()
    }

    pub fn tyy(&self) -> BiSeries {
        self.ty.euler_y()
    }

    /// `1/(1 − W)`
    pub fn inv_one_minus_w(&self) -> BiSeries {
        self.w.geom_inv().expect("W has zero constant term")
    }

    /// `L_k F = (1 − T_y) D_x F + (1 − T_x) D_y F + k F`.
    pub fn l_op(&self, f: &BiSeries, k: i64) -> BiSeries {
        let one = rat(1, 1);
        let a = (-&self.ty).add_constant(&one).mul(&f.euler_x());
        let b = (-&self.tx).add_constant(&one).mul(&f.euler_y());
        a.add(&b).add(&f.scale(&rat(k, 1)))
    }
}

/// Closed form `f_k(z, w)` for `k = 2, 3, 4`.
pub fn f_expr(k: u32) -> Option<RationalZWExpr> {
    let t = ZWTerm::scaled;
    match k {
        2 => Some(RationalZWExpr::new(vec![
            t(1, 3, 2, &[2, 3], 24),
            t(0, 3, 3, &[6, -1], 12),
        ])),
        3 => Some(RationalZWExpr::new(vec![
            t(0, 6, 3, &[5, 41, -23, 8, -1], 24),
            t(1, 6, 3, &[32, 34, -9, 3], 48),
            t(2, 6, 2, &[1, 8, 6], 48),
        ])),
        4 => Some(RationalZWExpr::new(vec![
            t(
                0,
                9,
                3,
                &[80, 7680, 22820, -15356, 9889, -3746, 809, -76],
                2880,
            ),
            t(
                1,
                9,
                3,
                &[2088, 35988, 30468, -6617, 5568, -1425, 230],
                5760,
            ),
            t(2, 9, 3, &[312, 1692, 1186, 64, 61], 576),
            t(3, 9, 2, &[24, 704, 2624, 1919, 254], 5760),
        ])),
        _ => None,
    }
}

/// `F_1 = −(log(1 − W) + W)/2`.
pub fn f1_closed(ws: &GfWorkspace) -> BiSeries {
    let log = ws.w.log_one_minus().expect("W has zero constant term");
    log.add(&ws.w).scale(&rat(-1, 2))
}

/// Closed-form `F_k` for `1 ≤ k ≤ 4`.
pub fn f_closed(ws: &GfWorkspace, k: u32) -> Result<BiSeries> {
    match k {
        0 => Ok(ws.t.clone()),
        1 => Ok(f1_closed(ws)),
        _ => {
            let expr = f_expr(k)
                .ok_or_else(|| Error::Unsupported(format!("no closed form stored for k={k}")))?;
            expr.eval(&ws.z, &ws.w)
        }
    }
}

/// Right side of `L_k F_{k+1} = (D_x D_y − D_x − D_y + 1 − k) F_k
/// + Σ_{l=1}^{k} D_x F_l · D_y F_{k+1−l}`.
pub fn pde_rhs(known: &[BiSeries]) -> BiSeries {
    let k = known.len() - 1;
    let fk = &known[k];
    let mut rhs = fk
        .euler_x()
        .euler_y()
        .sub(&fk.euler_x())
        .sub(&fk.euler_y())
        .add(&fk.scale(&rat(1 - k as i64, 1)));
    for l in 1..=k {
        rhs = rhs.add(&known[l].euler_x().mul(&known[k + 1 - l].euler_y()));
    }
    rhs
}

/// Solve for `F_{k+1}` given `known = [F_0, …, F_k]`, `k ≥ 1`.
///
/// `T_x` and `T_y` start at total degree 1, so on each coefficient `L_k`
/// reduces to multiplication by `r + s + k` plus contributions from
/// coefficients that precede `(r, s)` lexicographically.
pub fn solve_pde(ws: &GfWorkspace, known: &[BiSeries]) -> Result<BiSeries> {
    if known.len() < 2 {
        return Err(Error::Precondition(
            "the order-by-order solver needs k ≥ 1 (F_1 comes from its closed form)".into(),
        ));
    }
    let k = known.len() - 1;
    let rhs = pde_rhs(known);
    let (tr, ts) = (
        rhs.trunc_r().min(ws.tx.trunc_r()),
        rhs.trunc_s().min(ws.tx.trunc_s()),
    );
    let nz = |a: &BiSeries| -> Vec<(usize, usize, Rational)> {
        let mut v = Vec::new();
        for i in 0..=tr {
            for j in 0..=ts {
                if !a.coeff(i, j).is_zero() {
                    v.push((i, j, a.coeff(i, j).clone()));
                }
            }
        }
        v
    };
    let tx_terms = nz(&ws.tx);
    let ty_terms = nz(&ws.ty);
    let mut g = BiSeries::zero(tr, ts);
    for r in 0..=tr {
        for s in 0..=ts {
            let mut acc = rhs.coeff(r, s).clone();
            for (i, j, c) in &ty_terms {
                if *i <= r && *j <= s && r > *i {
                    acc += c * rat_int(BigInt::from(r - i)) * g.coeff(r - i, s - j);
                }
            }
            for (i, j, c) in &tx_terms {
                if *i <= r && *j <= s && s > *j {
                    acc += c * rat_int(BigInt::from(s - j)) * g.coeff(r - i, s - j);
                }
            }
            let divisor = r + s + k;
            g.set(r, s, acc / rat_int(BigInt::from(divisor)));
        }
    }
    // Pure x- or y-powers would be graphs with an empty side: they must vanish.
    for n in 0..=tr.max(ts) {
        let pure_x = n <= tr && !g.coeff(n, 0).is_zero();
        let pure_y = n <= ts && !g.coeff(0, n).is_zero();
        if pure_x || pure_y {
            return Err(Error::Integrity(format!(
                "solution for F_{} has a pure x/y term at degree {n}",
                k + 1
            )));
        }
    }
    Ok(g)
}

/// `F_0..=F_max_k` with `F_0 = T`, `F_1` closed form, the rest from the PDE.
pub fn pde_chain(ws: &GfWorkspace, max_k: usize) -> Result<Vec<BiSeries>> {
    let mut fs = vec![ws.t.clone()];
    if max_k >= 1 {
        fs.push(f1_closed(ws));
    }
    while fs.len() <= max_k {
        let next = solve_pde(ws, &fs)?;
        fs.push(next);
    }
    Ok(fs)
}

fn same(name: &str, lhs: &BiSeries, rhs: &BiSeries) -> Check {
    match lhs.first_difference(rhs) {
        None => Check::pass(name),
        Some((r, s)) => Check::fail(
            name,
            format!(
                "first discrepancy at x^{r} y^{s}: {} vs {}",
                lhs.coeff(r, s),
                rhs.coeff(r, s)
            ),
        ),
    }
}

/// Exact truncated-series checks of the algebraic relations among `T`, its
/// Euler derivatives, `Z` and `W`.
pub fn identity_suite(ws: &GfWorkspace) -> Report {
    let one = Rational::one();
    let mut rep = Report::new("identities");
    let (t, tx, ty, z, w, txy) = (&ws.t, &ws.tx, &ws.ty, &ws.z, &ws.w, &ws.txy);
    let (txx, tyy) = (ws.txx(), ws.tyy());
    let g = ws.inv_one_minus_w();
    let g2 = g.mul(&g);

    rep.push(same("Tx Ty = Tx + Ty - T", &tx.mul(ty), &tx.add(ty).sub(t)));
    rep.push(same("T = Z - W", t, &z.sub(w)));
    rep.push(same(
        "Txx = Tx (Txy + 1)",
        &txx,
        &tx.mul(&txy.add_constant(&one)),
    ));
    rep.push(same(
        "Tyy = Ty (Txy + 1)",
        &tyy,
        &ty.mul(&txy.add_constant(&one)),
    ));
    rep.push(same("Txy = Tyx", txy, &ty.euler_x()));
    rep.push(same("Txy = Tx Tyy", txy, &tx.mul(&tyy)));
    rep.push(same("Txy = Ty Txx", txy, &ty.mul(&txx)));
    rep.push(same("Txy = W/(1-W)", txy, &w.mul(&g)));
    rep.push(same(
        "Tx = x exp(Ty)",
        tx,
        &ty.exp_zero_const().expect("zero constant").x_times(),
    ));
    rep.push(same(
        "Ty = y exp(Tx)",
        ty,
        &tx.exp_zero_const().expect("zero constant").y_times(),
    ));

    rep.push(same("L0 Z = Z", &ws.l_op(z, 0), z));
    rep.push(same("L0 W = 2W", &ws.l_op(w, 0), &w.scale(&rat(2, 1))));
    let f2 = f_expr(2).expect("f2 stored");
    let lhs = ws.l_op(&f2.eval(z, w).expect("eval"), 0);
    let rhs_expr = f2.euler_z().plus(&f2.euler_w().scale(&rat(2, 1)));
    rep.push(same(
        "L0 h(Z,W) = (Dz h + 2 Dw h)(Z,W), h = f2",
        &lhs,
        &rhs_expr.eval(z, w).expect("eval"),
    ));

    let zx = z.euler_x();
    let zy = z.euler_y();
    let zxy = zx.euler_y();
    let wx = w.euler_x();
    let wy = w.euler_y();
    let wxy = wx.euler_y();
    let zw1 = z.add(w).add_constant(&one);
    rep.push(same("Zx = (W + Tx)/(1-W)", &zx, &w.add(tx).mul(&g)));
    rep.push(same("Zy = (W + Ty)/(1-W)", &zy, &w.add(ty).mul(&g)));
    rep.push(same(
        "Zxy = (2 + Z) Txy/(1-W)^2",
        &zxy,
        &z.add_constant(&rat(2, 1)).mul(txy).mul(&g2),
    ));
    rep.push(same(
        "Zx + Zy = (Z + 2W)/(1-W)",
        &zx.add(&zy),
        &z.add(&w.scale(&rat(2, 1))).mul(&g),
    ));
    rep.push(same(
        "Zx Zy = W(Z + W + 1)/(1-W)^2",
        &zx.mul(&zy),
        &w.mul(&zw1).mul(&g2),
    ));
    rep.push(same(
        "Wx = (1 + Tx) Txy",
        &wx,
        &tx.add_constant(&one).mul(txy),
    ));
    rep.push(same(
        "Wy = (1 + Ty) Txy",
        &wy,
        &ty.add_constant(&one).mul(txy),
    ));
    rep.push(same(
        "Wxy = Txy^2 + (1 + Z + W) Txy/(1-W)^2",
        &wxy,
        &txy.mul(txy).add(&zw1.mul(txy).mul(&g2)),
    ));
    rep.push(same(
        "Wx + Wy = W(Z + 2)/(1-W)",
        &wx.add(&wy),
        &w.mul(&z.add_constant(&rat(2, 1))).mul(&g),
    ));
    rep.push(same(
        "Wx Wy = W^2 (Z + W + 1)/(1-W)^2",
        &wx.mul(&wy),
        &w.mul(w).mul(&zw1).mul(&g2),
    ));
    let zwz4w = z.mul(w).add(z).add(&w.scale(&rat(4, 1)));
    rep.push(same(
        "Zx Wy + Zy Wx = W(ZW + Z + 4W)/(1-W)^2",
        &zx.mul(&wy).add(&zy.mul(&wx)),
        &w.mul(&zwz4w).mul(&g2),
    ));

    // The F_2 equation with its right side reduced to Z and W.
    let f1 = f1_closed(ws);
    let f2s = f2.eval(z, w).expect("eval");
    let lhs = ws.l_op(&f2s, 1).scale(&rat(4, 1));
    let inner = z
        .mul(
            &w.mul(w)
                .neg()
                .add(&w.scale(&rat(4, 1)))
                .add_constant(&rat(2, 1)),
        )
        .add(&w.mul(&w.mul(w).sub(&w.scale(&rat(5, 1))).add_constant(&rat(14, 1))));
    let rhs = w.mul(w).mul(&g2).mul(&g2).mul(&inner);
    rep.push(same(
        "4 L1 F2 = W^2/(1-W)^4 ((2+4W-W^2) Z + (14-5W+W^2) W)",
        &lhs,
        &rhs,
    ));
    rep.push(same(
        "L1 F2 = PDE right side built from F1",
        &ws.l_op(&f2s, 1),
        &pde_rhs(&[t.clone(), f1]),
    ));
    rep
}

/// The `k = −1` instance of the PDE applied to `F_0`:
/// `(D_x + D_y − 1) T − D_x T · D_y T`, which must vanish.
pub fn tree_equation_residual(ws: &GfWorkspace) -> BiSeries {
    let lhs = ws.tx.add(&ws.ty).sub(&ws.t);
    lhs.sub(&ws.tx.mul(&ws.ty))
}

/// Whether the stored `f_k` has the shape `w²/(1−w)^{3(k−1)} Σ_{j<k} q_j(w) z^j`.
pub fn generic_form_check(k: u32) -> Check {
    let name = format!("f{k} has generic (Z, W) form");
    match f_expr(k) {
        None => Check::fail(name, "no closed form stored"),
        Some(e) => match e.generic_form_violation(k) {
            None => Check::pass(name),
            Some(why) => Check::fail(name, why),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workspace_basics() {
        let ws = GfWorkspace::build(6).unwrap();
        assert_eq!(ws.t.integer_count(1, 1).unwrap(), BigInt::from(1));
        assert_eq!(ws.tx.integer_count(1, 0).unwrap(), BigInt::from(1));
        assert_eq!(ws.z.integer_count(1, 0).unwrap(), BigInt::from(1));
        assert_eq!(ws.w.integer_count(1, 1).unwrap(), BigInt::from(1));
        assert!(ws.z.add(&ws.z.neg()).is_zero());
        assert_eq!(ws.txy, ws.w.mul(&ws.w.geom_inv().unwrap()));
        assert!(GfWorkspace::build(0).is_err());
    }

    #[test]
    fn unicycle_closed_form_smallest_cases() {
        let ws = GfWorkspace::build(6).unwrap();
        let f1 = f1_closed(&ws);
        assert_eq!(f1.integer_count(2, 2).unwrap(), BigInt::from(1));
        assert!(f1.integer_count(1, 1).unwrap().is_zero());
        f1.check_counts_natural().unwrap();
    }

    #[test]
    fn bicycle_closed_form_vanishes_on_stars() {
        let ws = GfWorkspace::build(6).unwrap();
        let f2 = f_closed(&ws, 2).unwrap();
        for s in 0..=6 {
            assert!(f2.coeff(1, s).is_zero());
            assert!(f2.coeff(s, 1).is_zero());
        }
        assert_eq!(f2.integer_count(2, 3).unwrap(), BigInt::from(1));
        assert!(f_closed(&ws, 5).is_err());
    }

    #[test]
    fn solver_rejects_k_zero() {
        let ws = GfWorkspace::build(4).unwrap();
        assert!(solve_pde(&ws, &[ws.t.clone()]).is_err());
    }

    #[test]
    fn solver_reproduces_f2() {
        let ws = GfWorkspace::build(7).unwrap();
        let f2 = solve_pde(&ws, &[ws.t.clone(), f1_closed(&ws)]).unwrap();
        assert_eq!(f2, f_closed(&ws, 2).unwrap());
    }

    #[test]
    fn tree_equation_holds() {
        let ws = GfWorkspace::build(8).unwrap();
        assert!(tree_equation_residual(&ws).is_zero());
    }

    #[test]
    fn generic_forms() {
        for k in 2..=4 {
            assert!(generic_form_check(k).passed, "k={k}");
        }
        assert!(!generic_form_check(5).passed);
    }

    #[test]
    fn identities_at_small_truncation() {
        let rep = identity_suite(&GfWorkspace::build(5).unwrap());
        assert!(rep.all_passed(), "{rep}");
    }
}
