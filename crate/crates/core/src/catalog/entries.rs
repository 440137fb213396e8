use super::{CatalogEntry, CatalogError, ParamIssue, ParamRange, PrintedForms};
use crate::ballmap::{MapComponent, MonomialBallMap, Signature};
use crate::exactnum::{int, Field, Rational, SurdSum};
use crate::induce::SymbolicMatrixMap;
use crate::poly::{ExponentVector, Polynomial};

type Poly = Polynomial<SurdSum>;

pub(super) const MAX_GENERAL_SIZE: usize = 6;

fn ev(n: usize, factors: &[(usize, u32)]) -> ExponentVector {
    let mut e = vec![0; n];
    for &(v, p) in factors {
        e[v] += p;
    }
    ExponentVector::new(e)
}

/// `sqrt(square) * monomial`, or a zero slot when `square` is zero.
fn comp(square: &Rational, n: usize, factors: &[(usize, u32)]) -> Option<MapComponent> {
    if *square == int(0) {
        return None;
    }
    Some(MapComponent::with_coeff_square(square, ev(n, factors)).expect("positive square"))
}

fn unit(n: usize, factors: &[(usize, u32)]) -> Option<MapComponent> {
    comp(&int(1), n, factors)
}

fn term(c: &SurdSum, n: usize, factors: &[(usize, u32)]) -> Poly {
    Polynomial::monomial(ev(n, factors), c.clone())
}

fn mono(n: usize, factors: &[(usize, u32)]) -> Poly {
    term(&SurdSum::one(), n, factors)
}

fn sqrt(q: &Rational) -> SurdSum {
    if *q == int(0) {
        return SurdSum::zero();
    }
    SurdSum::sqrt(q).expect("positive radicand")
}

fn quotient(a: &SurdSum, b: &SurdSum) -> SurdSum {
    a.checked_div(b).expect("nonzero divisor")
}

fn parse_f(r: usize, s: usize, rows: &[&[&str]]) -> SymbolicMatrixMap {
    SymbolicMatrixMap::parse(r, s, rows).expect("catalog text")
}

fn parse_q(text: &str, n: usize) -> Polynomial<Rational> {
    Polynomial::parse_with(text, n, "x").expect("catalog text")
}

fn map(sig: Signature, positive: Vec<Option<MapComponent>>, negative: Vec<Option<MapComponent>>) -> MonomialBallMap {
    MonomialBallMap::new(sig, positive, negative).expect("catalog map")
}

fn sig(r: usize, s: usize, rp: usize, sp: usize) -> Signature {
    Signature::new(r, s, rp, sp).expect("catalog signature")
}

fn fixed(name: &str, g: MonomialBallMap, q_p: Polynomial<Rational>, f: SymbolicMatrixMap, notes: Vec<String>) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        g,
        q_p,
        f_expected: f,
        t: None,
        param_range: None,
        printed: None,
        notes,
    }
}

pub(super) fn standard() -> CatalogEntry {
    let g = MonomialBallMap::parse(sig(2, 2, 3, 3), &["z1", "z2", "0"], &["z3", "z4", "0"]).unwrap();
    let f = parse_f(2, 2, &[&["z1", "z2", "0"], &["z3", "z4", "0"], &["0", "0", "0"]]);
    fixed(
        "standard",
        g,
        parse_q("1", 4),
        f,
        vec![
            "degree-1 padded map; row 3 of f is free (the k, h block), fixed here to 0".into(),
            "a nonzero shared third slot phi admits no induced map; see the numeric Shilov demonstration".into(),
        ],
    )
}

pub(super) fn whitney_2x2() -> CatalogEntry {
    let g = MonomialBallMap::parse(sig(2, 2, 3, 3), &["z1^2", "z1*z2", "z2*z3"], &["z3^2", "z3*z4", "z1*z4"]).unwrap();
    let f = parse_f(2, 2, &[&["z1^2", "z1*z2", "z2"], &["z1*z3", "z2*z3", "z4"], &["z3", "z4", "0"]]);
    fixed(
        "whitney_2x2",
        g,
        parse_q("x1 + x3", 4),
        f,
        vec!["negative slots ordered z3^2, z3*z4, z1*z4 so that column j of f pairs with slot j".into()],
    )
}

pub(super) fn square_2x2() -> CatalogEntry {
    let g = MonomialBallMap::parse(
        sig(2, 2, 3, 3),
        &["z1^2", "sqrt(2)*z1*z2", "z2^2"],
        &["z3^2", "sqrt(2)*z3*z4", "z4^2"],
    )
    .unwrap();
    let f = parse_f(
        2,
        2,
        &[
            &["z1^2", "sqrt(2)*z1*z2", "z2^2"],
            &["sqrt(2)*z1*z3", "z1*z4 + z2*z3", "sqrt(2)*z2*z4"],
            &["z3^2", "sqrt(2)*z3*z4", "z4^2"],
        ],
    );
    fixed("square_2x2", g, parse_q("x1 + x2 + x3 + x4", 4), f, vec![])
}

fn check_range(name: &str, t: &Rational, range: &ParamRange) -> Result<(), CatalogError> {
    if !range.contains(t) {
        return Err(CatalogError::ParamError {
            name: name.to_string(),
            issue: ParamIssue::OutOfRange {
                t: t.to_string(),
                range: range.to_string(),
            },
        });
    }
    Ok(())
}

pub(super) fn family_t_2244_range() -> ParamRange {
    // t = 1 is admissible for g but not for the printed f
    ParamRange::new(int(0), int(1), true)
}

pub(super) fn family_t_2244(t: &Rational) -> Result<CatalogEntry, CatalogError> {
    let name = "family_t_2244";
    let range = family_t_2244_range();
    check_range(name, t, &range)?;
    if *t == int(1) {
        return Err(CatalogError::ParamError {
            name: name.into(),
            issue: ParamIssue::IndeterminateEntry {
                t: t.to_string(),
                entry: (2, 1),
                reason: "(sqrt(2-t) - t)/sqrt(1-t) is 0/0 at t = 1; the limit is 0".into(),
            },
        });
    }
    let n = 4;
    let (two_t, one_t) = (int(2) - t, int(1) - t);
    let g = map(
        sig(2, 2, 4, 4),
        vec![
            unit(n, &[(0, 2)]),
            comp(&two_t, n, &[(0, 1), (1, 1)]),
            comp(&one_t, n, &[(1, 2)]),
            comp(t, n, &[(1, 1), (2, 1)]),
        ],
        vec![
            unit(n, &[(2, 2)]),
            comp(&two_t, n, &[(2, 1), (3, 1)]),
            comp(&one_t, n, &[(3, 2)]),
            comp(t, n, &[(0, 1), (3, 1)]),
        ],
    );
    let (s2, s1, st) = (sqrt(&two_t), sqrt(&one_t), sqrt(t));
    let tt = SurdSum::from_rational(t.clone());
    let one = SurdSum::one();
    let zero = Poly::zero(n);
    let e12 = &term(&quotient(&(&s2 - &tt), &s2), n, &[(0, 1), (3, 1)]) + &mono(n, &[(1, 1), (2, 1)]);
    let rows = vec![
        vec![mono(n, &[(0, 2)]), term(&s2, n, &[(0, 1), (1, 1)]), term(&s1, n, &[(1, 2)]), term(&st, n, &[(1, 1)])],
        vec![
            term(&s2, n, &[(0, 1), (2, 1)]),
            e12,
            term(&quotient(&s1.times(&SurdSum::from_i64(2)), &s2), n, &[(1, 1), (3, 1)]),
            term(&quotient(&st, &s2), n, &[(3, 1)]),
        ],
        vec![
            term(&s1, n, &[(2, 2)]),
            term(&quotient(&(&s2 - &tt), &s1), n, &[(2, 1), (3, 1)]),
            term(&one, n, &[(3, 2)]),
            zero.clone(),
        ],
        vec![term(&st, n, &[(2, 1)]), term(&st, n, &[(3, 1)]), zero.clone(), zero],
    ];
    let f = SymbolicMatrixMap::new(2, 2, rows).expect("shape");
    let q_p = &parse_q("x1 + x2 + x3 + x4", n) - &parse_q("x2 + x4", n).scale(t);
    Ok(CatalogEntry {
        name: name.into(),
        g,
        q_p,
        f_expected: f,
        t: Some(t.clone()),
        param_range: Some(range),
        printed: None,
        notes: vec![
            "row 4 of f is free: the system has rank 3 for every t; the printed row 4 is used to fix it".into(),
            "at t = 0 the square map sits in the upper-left 3x3 block".into(),
            "t = 1 is excluded: entry (3,2) is 0/0".into(),
        ],
    })
}

pub(super) fn family_t_2234_range() -> ParamRange {
    ParamRange::new(int(0), int(1), true)
}

pub(super) fn family_t_2234(t: &Rational) -> Result<CatalogEntry, CatalogError> {
    let name = "family_t_2234";
    let range = family_t_2234_range();
    check_range(name, t, &range)?;
    let n = 4;
    let one_t = int(1) - t;
    let g = map(
        sig(2, 2, 3, 4),
        vec![unit(n, &[(0, 2)]), unit(n, &[(0, 1), (1, 1)]), comp(t, n, &[(1, 1), (2, 1)])],
        vec![
            comp(t, n, &[(2, 2)]),
            comp(t, n, &[(2, 1), (3, 1)]),
            comp(&one_t, n, &[(0, 1), (2, 1)]),
            unit(n, &[(0, 1), (3, 1)]),
        ],
    );
    let (st, s1) = (sqrt(t), sqrt(&one_t));
    let zero = Poly::zero(n);
    let rows = vec![
        vec![term(&st, n, &[(0, 2)]), term(&st, n, &[(0, 1), (1, 1)]), term(&s1, n, &[(0, 1)]), mono(n, &[(1, 1)])],
        vec![term(&st, n, &[(0, 1), (2, 1)]), term(&st, n, &[(1, 1), (2, 1)]), term(&s1, n, &[(2, 1)]), mono(n, &[(3, 1)])],
        vec![mono(n, &[(2, 1)]), mono(n, &[(3, 1)]), zero.clone(), zero],
    ];
    let f = SymbolicMatrixMap::new(2, 2, rows).expect("shape");
    let q_p = &parse_q("x1", n) + &parse_q("x3", n).scale(t);
    Ok(CatalogEntry {
        name: name.into(),
        g,
        q_p,
        f_expected: f,
        t: Some(t.clone()),
        param_range: Some(range),
        printed: None,
        notes: vec!["at t = 0 slot 3 of g vanishes and row 3 of f becomes free; the printed row 3 is used".into()],
    })
}

pub(super) fn degree3_2244() -> CatalogEntry {
    let g = MonomialBallMap::parse(
        sig(2, 2, 4, 4),
        &["z1^3", "z1^2*z2", "z1*z2*z3", "z2*z3^2"],
        &["z3^3", "z1^2*z4", "z1*z3*z4", "z3^2*z4"],
    )
    .unwrap();
    // transcription of the printed matrix; the solver disagrees with it
    let f = parse_f(
        2,
        2,
        &[
            &["z1^3", "z2", "z1*z2", "z1^2*z2"],
            &["z1^2*z3^2", "z4", "z2*z3", "z1*z2*z3 - z1^2*z4 + z1^2*z3*z4"],
            &["3*z1*z3 - 2*z1*z3^2", "0", "0", "z2*z3 + 2*z1*z4 - 2*z1*z3*z4"],
            &["z3^2", "0", "0", "z3*z4"],
        ],
    );
    CatalogEntry {
        name: "degree3_2244".into(),
        g,
        q_p: parse_q("x1^2 + x1*x3 + x3^2", 4),
        f_expected: f,
        t: None,
        param_range: None,
        printed: Some(PrintedForms {
            g: vec![
                "x_1^3", "x_1^2 x_2", "x_1x_2x_3", "x_2x_3^3", "x_3^2", "x_1^2 x_4", "x_1x_3x_4", "x_3^2x_4",
            ],
            p: "x_1^3 + x_1^2 x_2 + x_1x_2x_3 + x_2x_3^3 -x_3^2 -x_1^2 x_4 - x_1x_3x_4 - x_3^2x_4",
            rp: 4,
        }),
        notes: vec![
            "g is rebuilt from L * Q_P; the printed slots x_2x_3^3 and x_3^2 are not of degree 3".into(),
            "f_expected holds the printed matrix; the solver's f is authoritative".into(),
        ],
    }
}

fn general_shape(name: &str, r: usize, s: usize) -> Result<(), CatalogError> {
    if !(2..=MAX_GENERAL_SIZE).contains(&r) || !(2..=MAX_GENERAL_SIZE).contains(&s) {
        return Err(CatalogError::ParamError {
            name: name.to_string(),
            issue: ParamIssue::Shape(format!("need 2 <= r, s <= {MAX_GENERAL_SIZE}, got ({r}, {s})")),
        });
    }
    Ok(())
}

/// `g = [z1^2, z1 z2..z1 zr, w1 z2..w1 zr | w1^2, w1 w2..w1 ws, z1 w2..z1 ws]`.
pub(super) fn generalized_whitney(r: usize, s: usize) -> Result<CatalogEntry, CatalogError> {
    let name = format!("generalized_whitney({r},{s})");
    general_shape(&name, r, s)?;
    let n = r + s;
    let w = |k: usize| r + k;
    let mut positive = vec![unit(n, &[(0, 2)])];
    positive.extend((1..r).map(|i| unit(n, &[(0, 1), (i, 1)])));
    positive.extend((1..r).map(|i| unit(n, &[(w(0), 1), (i, 1)])));
    let mut negative = vec![unit(n, &[(w(0), 2)])];
    negative.extend((1..s).map(|k| unit(n, &[(w(0), 1), (w(k), 1)])));
    negative.extend((1..s).map(|k| unit(n, &[(0, 1), (w(k), 1)])));
    let g = map(sig(r, s, 2 * r - 1, 2 * s - 1), positive, negative);

    let m = r * s;
    let z = |i: usize, j: usize| i * s + j;
    let mut rows = Vec::new();
    for i in 0..r {
        let mut row: Vec<Poly> = (0..s).map(|j| mono(m, &[(z(i, 0), 1), (z(0, j), 1)])).collect();
        row.extend((1..s).map(|j| mono(m, &[(z(i, j), 1)])));
        rows.push(row);
    }
    for i in 1..r {
        let mut row: Vec<Poly> = (0..s).map(|j| mono(m, &[(z(i, j), 1)])).collect();
        row.extend((1..s).map(|_| Poly::zero(m)));
        rows.push(row);
    }
    let f = SymbolicMatrixMap::new(r, s, rows).expect("shape");
    let mut q = Polynomial::var(n, 0);
    q = &q + &Polynomial::var(n, r);
    let mut notes = vec!["equals whitney_2x2 at r = s = 2".to_string()];
    if r != s {
        notes.push("the printed second row ends its first block with z_{21}z_{1r}; read z_{21}z_{1s}".into());
    }
    Ok(CatalogEntry {
        name,
        g,
        q_p: q,
        f_expected: f,
        t: None,
        param_range: None,
        printed: None,
        notes,
    })
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Squares first, then `sqrt(2)` cross terms in lex order, on each side.
pub(super) fn symmetric_square(r: usize, s: usize) -> Result<CatalogEntry, CatalogError> {
    let name = format!("symmetric_square({r},{s})");
    general_shape(&name, r, s)?;
    let n = r + s;
    let two = int(2);
    let side = |offset: usize, len: usize| -> Vec<Option<MapComponent>> {
        let mut out: Vec<_> = (0..len).map(|i| unit(n, &[(offset + i, 2)])).collect();
        out.extend(pairs(len).into_iter().map(|(i, j)| comp(&two, n, &[(offset + i, 1), (offset + j, 1)])));
        out
    };
    let g = map(sig(r, s, r * (r + 1) / 2, s * (s + 1) / 2), side(0, r), side(r, s));

    let m = r * s;
    let z = |i: usize, j: usize| i * s + j;
    let root2 = sqrt(&two);
    let (row_pairs, col_pairs) = (pairs(r), pairs(s));
    let entry_sq = |i: usize, k: usize| mono(m, &[(z(i, k), 2)]);
    let mut rows = Vec::new();
    for i in 0..r {
        let mut row: Vec<Poly> = (0..s).map(|k| entry_sq(i, k)).collect();
        row.extend(col_pairs.iter().map(|&(k, l)| term(&root2, m, &[(z(i, k), 1), (z(i, l), 1)])));
        rows.push(row);
    }
    for &(i, j) in &row_pairs {
        let mut row: Vec<Poly> = (0..s).map(|k| term(&root2, m, &[(z(i, k), 1), (z(j, k), 1)])).collect();
        row.extend(
            col_pairs
                .iter()
                .map(|&(k, l)| &mono(m, &[(z(i, k), 1), (z(j, l), 1)]) + &mono(m, &[(z(j, k), 1), (z(i, l), 1)])),
        );
        rows.push(row);
    }
    let f = SymbolicMatrixMap::new(r, s, rows).expect("shape");
    let q = (0..n).fold(Polynomial::zero(n), |acc, i| &acc + &Polynomial::var(n, i));
    let mut notes = vec!["rows and columns of f follow the slot order of g".to_string()];
    if r != s {
        notes.push("the printed index range for the column pairs reads 1 <= k < l <= r; read s".into());
    }
    Ok(CatalogEntry {
        name,
        g,
        q_p: q,
        f_expected: f,
        t: None,
        param_range: None,
        printed: None,
        notes,
    })
}

