//! One check per acceptance criterion, each returning a short summary or the
//! first discrepancy found.
#![allow(dead_code)]

use std::collections::BTreeMap;

use delpezzo::classify::{decide, decide_group, reproduce_table, Obstruction, SubgroupType};
use delpezzo::cli;
use delpezzo::cyclo::CycNum;
use delpezzo::families::{family, obstruction_example, FamilyParams, FamilySpec, FAMILY_NAMES};
use delpezzo::fixedlocus::fixed_points_on_surface;
use delpezzo::geometry::{act_on_poly, reynolds_invariants, third_point, PointCount, ProjPoint, SurfaceModel};
use delpezzo::groups::{generate_in, sylow_subgroup, ProjElement, ProjGroup, DEFAULT_CAP};
use delpezzo::linalg::Matrix;
use delpezzo::lines::{fermat_lines, invariant_picard_rank, invariant_picard_rank_echelon};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{diagonal_conic_pair_points, planes, points_on_line, stable_monomials};

pub type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn spec(name: &str) -> FamilySpec {
    family(name, &FamilyParams::default()).expect("built-in family")
}

fn kind_name(t: SubgroupType) -> &'static str {
    match t {
        SubgroupType::TypeI => "I",
        SubgroupType::TypeII => "II",
        SubgroupType::TypeIII => "III",
    }
}

/// Sign changes of five coordinates modulo the global sign, as vectors of `F_2^4`
/// (the fifth sign fixed to +1).
pub fn dp4_oracle() -> BTreeMap<&'static str, (usize, Vec<usize>)> {
    let kind = |v: &Vec<u8>| {
        let w = v.iter().filter(|&&x| x == 1).count();
        w.min(5 - w)
    };
    let mut out: BTreeMap<&'static str, (usize, Vec<usize>)> = BTreeMap::new();
    for plane in planes(2, 4) {
        let first = plane.iter().filter(|v| kind(v) == 1).count();
        let second = plane.iter().filter(|v| kind(v) == 2).count();
        let t = match (first, second) {
            (2, 1) => "I",
            (1, 2) => "II",
            (0, 3) => "III",
            other => panic!("impossible kind counts {other:?}"),
        };
        let e = out.entry(t).or_insert((0, vec![first, second]));
        e.0 += 1;
    }
    out
}

pub fn criterion_1() -> Check {
    let report = reproduce_table("dp4-c22").map_err(|e| e.to_string())?;
    let oracle = dp4_oracle();
    ensure(report.rows.len() == 35, || format!("{} rows, expected 35", report.rows.len()))?;
    let oracle_total: usize = oracle.values().map(|v| v.0).sum();
    ensure(oracle_total == 35, || format!("oracle found {oracle_total} planes"))?;
    for (t, n) in &report.totals {
        let (m, counts) = &oracle[kind_name(*t)];
        ensure(n == m, || format!("type {t}: {n} subgroups, oracle {m}"))?;
        ensure(&report.type_counts[t] == counts, || format!("type {t}: counts differ from oracle"))?;
    }
    for r in &report.rows {
        ensure((r.kind == SubgroupType::TypeI) == r.has_fixed_point, || {
            format!("row {:?}: type {} but has_fixed_point = {}", r.generators, r.kind, r.has_fixed_point)
        })?;
    }
    let out = cli::run(["delpezzo", "tables", "dp4-c22"]);
    ensure(out.code == 0, || format!("tables dp4-c22 exited with {}", out.code))?;
    Ok(format!(
        "35 subgroups, I:{} II:{} III:{}, type I exactly when fixed points",
        report.totals[&SubgroupType::TypeI],
        report.totals[&SubgroupType::TypeII],
        report.totals[&SubgroupType::TypeIII]
    ))
}

/// Diagonal `C3^2` subgroups of `PGL_4` as planes of `F_3^4 / <(1,1,1,1)>`, with
/// their (3A2, 2A2, A2) counts and orbits under coordinate permutations.
pub fn dp3_oracle() -> BTreeMap<Vec<usize>, Vec<usize>> {
    let normalize = |v: &[u8]| -> Vec<u8> { v.iter().map(|x| (x + 3 - v[3]) % 3).collect() };
    let class = |v: &Vec<u8>| {
        let mut mult = [0usize; 3];
        for &x in v {
            mult[x as usize] += 1;
        }
        let mut m: Vec<usize> = mult.into_iter().filter(|&k| k > 0).collect();
        m.sort_unstable_by(|a, b| b.cmp(a));
        match m.as_slice() {
            [3, 1] => 0,
            [2, 1, 1] => 1,
            [2, 2] => 2,
            other => panic!("not of order 3: {other:?}"),
        }
    };
    let subgroups: Vec<Vec<Vec<u8>>> = planes(3, 3)
        .into_iter()
        .map(|p| {
            let mut s: Vec<Vec<u8>> = p.iter().map(|v| normalize(&[v[0], v[1], v[2], 0])).collect();
            s.sort();
            s
        })
        .collect();
    let perms = permutations(4);
    let mut seen = vec![false; subgroups.len()];
    let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for i in 0..subgroups.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = 0;
        for p in &perms {
            let mut image: Vec<Vec<u8>> = subgroups[i]
                .iter()
                .map(|v| normalize(&[v[p[0]], v[p[1]], v[p[2]], v[p[3]]]))
                .collect();
            image.sort();
            let j = subgroups.iter().position(|s| *s == image).expect("closed under permutations");
            if !seen[j] {
                seen[j] = true;
                orbit += 1;
            }
        }
        let mut counts = vec![0usize; 3];
        for v in &subgroups[i] {
            counts[class(v)] += 1;
        }
        out.entry(counts).or_default().push(orbit);
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn criterion_2() -> Check {
    let report = reproduce_table("dp3-c32").map_err(|e| e.to_string())?;
    ensure(report.rows.len() == 13, || format!("{} rows, expected 13", report.rows.len()))?;
    let expected = [
        (SubgroupType::TypeI, vec![4, 2, 2], vec![6]),
        (SubgroupType::TypeII, vec![2, 6, 0], vec![4]),
        (SubgroupType::TypeIII, vec![0, 4, 4], vec![3]),
    ];
    let oracle = dp3_oracle();
    for (t, counts, orbits) in &expected {
        ensure(report.type_counts.get(t) == Some(counts), || {
            format!("type {t}: counts {:?}, table lists {counts:?}", report.type_counts.get(t))
        })?;
        ensure(oracle.get(counts) == Some(orbits), || {
            format!("oracle orbits for {counts:?}: {:?}", oracle.get(counts))
        })?;
        ensure(report.orbit_sizes.get(t) == Some(orbits), || {
            format!("type {t}: orbit sizes {:?}, expected {orbits:?}", report.orbit_sizes.get(t))
        })?;
    }
    for r in &report.rows {
        ensure((r.kind == SubgroupType::TypeI) == r.has_fixed_point, || {
            format!("row {:?}: type {} but has_fixed_point = {}", r.generators, r.kind, r.has_fixed_point)
        })?;
    }
    let out = cli::run(["delpezzo", "tables", "dp3-c32"]);
    ensure(out.code == 0, || format!("tables dp3-c32 exited with {}", out.code))?;
    Ok("13 subgroups, orbits 6/4/3, triples (4,2,2)/(2,6,0)/(0,4,4)".into())
}

fn decide_preset(name: &str, preset: &str) -> Result<delpezzo::classify::DecisionReport, String> {
    let s = spec(name);
    let gens = s.preset_generators(preset).map_err(|e| e.to_string())?;
    decide(&s.surface, &gens).map_err(|e| e.to_string())
}

pub fn criterion_3() -> Check {
    for preset in ["S5", "A5", "C5"] {
        let r = decide_preset("clebsch", preset)?;
        ensure(r.unirational, || format!("Clebsch {preset}: not unirational"))?;
    }
    Ok("Clebsch is unirational for S5, A5, C5".into())
}

pub fn criterion_4() -> Check {
    let mut seen = Vec::new();
    for letter in ['A', 'B', 'C', 'D'] {
        let (s, preset) = obstruction_example(letter).map_err(|e| e.to_string())?;
        let gens = s.preset_generators(preset).map_err(|e| e.to_string())?;
        let r = decide(&s.surface, &gens).map_err(|e| e.to_string())?;
        ensure(!r.unirational, || format!("obstruction {letter}: reported unirational"))?;
        let labels: Vec<String> = r.obstructions().iter().map(|o| o.to_string()).collect();
        ensure(labels == [letter.to_string()], || format!("obstruction {letter}: labels {labels:?}"))?;
        seen.push(format!("{}/{preset}", s.name));
    }
    Ok(format!("examples {} give exactly A, B, C, D", seen.join(", ")))
}

pub fn criterion_5() -> Check {
    let full = decide_preset("fermat", "full")?;
    ensure(full.group_order == 648, || format!("full group has order {}", full.group_order))?;
    ensure(!full.unirational, || "Fermat full group reported unirational".into())?;
    let labels = full.obstructions();
    ensure(labels.contains(&Obstruction::B) && labels.contains(&Obstruction::D), || {
        format!("Fermat full labels {labels:?}")
    })?;
    let a4 = decide_preset("fermat", "A4_lift")?;
    ensure(a4.group_order == 12, || format!("A4 lift has order {}", a4.group_order))?;
    ensure(a4.unirational, || "A4 lift reported not unirational".into())?;
    Ok("order 648 not unirational with B and D; A4 lift unirational".into())
}

pub fn criterion_6() -> Check {
    let r = decide_preset("cyclic_cubic", "H33")?;
    ensure(r.group_order == 27, || format!("H33 has image of order {}", r.group_order))?;
    ensure(!r.unirational, || "Heisenberg action reported unirational".into())?;
    ensure(r.obstructions().contains(&Obstruction::D), || format!("labels {:?}", r.obstructions()))?;
    Ok("alpha = 1 cubic with H33 not unirational, witness D".into())
}

pub fn criterion_7() -> Check {
    let fermat = spec("fermat");
    let g = fermat.preset_group("typeI", DEFAULT_CAP).map_err(|e| e.to_string())?;
    let report = fixed_points_on_surface(&g, &fermat.surface).map_err(|e| e.to_string())?;
    let line = report
        .components
        .iter()
        .find(|c| c.subspace.dim() == 2)
        .ok_or("type I has no fixed line")?;
    ensure(line.meet.count == PointCount::Finite(3), || format!("fixed line meets in {}", line.meet.count))?;
    let b = line.subspace.basis();
    let numeric = points_on_line(&fermat.surface.equations()[0], b.row(0), b.row(1), 3);
    ensure(numeric == 3, || format!("numeric oracle finds {numeric} points on the line"))?;

    let quartic = spec("diagonal_quartic");
    let g = quartic.preset_group("iota45", DEFAULT_CAP).map_err(|e| e.to_string())?;
    let report = fixed_points_on_surface(&g, &quartic.surface).map_err(|e| e.to_string())?;
    let mut total = 0;
    for c in &report.components {
        match c.meet.count {
            PointCount::Finite(k) => total += k,
            other => return Err(format!("component of dimension {} meets in {other}", c.subspace.dim())),
        }
    }
    ensure(total == 4, || format!("<iota4, iota5> has {total} fixed points"))?;
    let plane = report
        .components
        .iter()
        .find(|c| c.subspace.dim() == 3)
        .ok_or("no fixed plane")?;
    let b = plane.subspace.basis();
    let coords: Vec<usize> = (0..5)
        .filter(|&j| (0..3).any(|i| !b.get(i, j).is_zero()))
        .collect();
    ensure(coords.len() == 3, || format!("fixed plane is not a coordinate plane: {coords:?}"))?;
    let a = [coords[0] as i64, coords[1] as i64, coords[2] as i64];
    let oracle = diagonal_conic_pair_points(a);
    ensure(oracle == 4, || format!("oracle finds {oracle} points on the plane"))?;
    Ok("type I line meets in 3 points; <iota4, iota5> fixes exactly 4 points".into())
}

fn monomial_set(basis: &[delpezzo::geometry::SparsePoly]) -> Option<Vec<Vec<u32>>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for p in basis {
        if p.terms().len() != 1 {
            return None;
        }
        out.push(p.terms().keys().next().unwrap().clone());
    }
    out.sort();
    Some(out)
}

pub fn criterion_8() -> Check {
    let fermat = spec("fermat");
    let cube = |i: usize| {
        let mut e = vec![0; 4];
        e[i] = 3;
        e
    };
    let cases = [
        ("typeII", vec![vec![1, 1, 1, 0], vec![0, 1, 2, 0]], {
            let mut v: Vec<Vec<u32>> = (0..4).map(cube).collect();
            v.push(vec![1, 1, 1, 0]);
            v
        }),
        ("typeIII", vec![vec![1, 2, 0, 0], vec![0, 0, 1, 2]], (0..4).map(cube).collect()),
    ];
    for (preset, diags, listed) in cases {
        let g = fermat.preset_group(preset, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let basis = reynolds_invariants(&g, 3, None).map_err(|e| e.to_string())?;
        let got = monomial_set(&basis).ok_or_else(|| format!("{preset}: basis is not monomial"))?;
        let mut oracle = stable_monomials(4, 3, 3, &diags);
        oracle.sort();
        let mut listed = listed;
        listed.sort();
        ensure(oracle == listed, || format!("{preset}: oracle {oracle:?}"))?;
        ensure(got == listed, || format!("{preset}: invariants {got:?}"))?;
    }

    let a4 = spec("a4_cubic");
    let g = a4.preset_group("A4", DEFAULT_CAP).map_err(|e| e.to_string())?;
    let basis = reynolds_invariants(&g, 3, None).map_err(|e| e.to_string())?;
    ensure(basis.len() == 3, || format!("A4 cubic invariants have dimension {}", basis.len()))?;
    // Coordinates in the basis x4^3, x4(x1^2 + x2^2 + x3^2), x1 x2 x3.
    let blocks: [Vec<Vec<u32>>; 3] = [
        vec![vec![0, 0, 0, 3]],
        vec![vec![2, 0, 0, 1], vec![0, 2, 0, 1], vec![0, 0, 2, 1]],
        vec![vec![1, 1, 1, 0]],
    ];
    let mut coords = Vec::new();
    for p in &basis {
        let support = p.terms().len();
        let in_blocks: usize = blocks.iter().map(|b| b.iter().filter(|m| !p.coeff(m).is_zero()).count()).sum();
        ensure(support == in_blocks, || format!("A4 invariant {p} leaves the listed span"))?;
        let mut row = Vec::new();
        for b in &blocks {
            let c0 = p.coeff(&b[0]);
            ensure(b.iter().all(|m| p.coeff(m) == c0), || format!("A4 invariant {p} is not symmetric"))?;
            row.push(c0);
        }
        coords.push(row);
    }
    let det = det3(&coords);
    ensure(!det.is_zero(), || "A4 invariants are dependent".into())?;
    Ok("type II: 5 monomials, type III: 4 monomials, A4: dimension 3".into())
}

fn det3(m: &[Vec<CycNum>]) -> CycNum {
    let t = |i: usize, j: usize, k: usize| &(&m[0][i] * &m[1][j]) * &m[2][k];
    let pos = &(&t(0, 1, 2) + &t(1, 2, 0)) + &t(2, 0, 1);
    let neg = &(&t(2, 1, 0) + &t(0, 2, 1)) + &t(1, 0, 2);
    &pos - &neg
}

/// Every preset of every family with default parameters.
pub fn all_presets() -> Vec<(FamilySpec, String)> {
    FAMILY_NAMES
        .iter()
        .flat_map(|name| {
            let s = spec(name);
            let presets: Vec<String> = s.presets.keys().cloned().collect();
            presets.into_iter().map(move |p| (s.clone(), p))
        })
        .collect()
}

pub fn cyclic_subgroups_have_fixed_points() -> Check {
    let mut checked = 0;
    for (s, preset) in all_presets() {
        let g = s.preset_group(&preset, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for i in 0..g.order() {
            let set = g.closure(&[i]);
            if seen.contains(&set) {
                continue;
            }
            seen.push(set.clone());
            let c = g.subgroup(&set);
            let r = fixed_points_on_surface(&c, &s.surface).map_err(|e| e.to_string())?;
            ensure(r.has_fixed_point, || {
                format!("{}/{preset}: cyclic subgroup of order {} has no fixed point", s.name, c.order())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cyclic subgroups"))
}

fn primes(mut n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as u64);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

pub fn sylow_consistency() -> Check {
    let mut checked = 0;
    for (s, preset) in all_presets() {
        let g = s.preset_group(&preset, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let whole = decide_group(&s.surface, &g).map_err(|e| e.to_string())?.unirational;
        let mut all = true;
        for p in primes(g.order()) {
            let sp = sylow_subgroup(&g, p);
            ensure(sp.order() > 1 && g.order() % sp.order() == 0 && !((g.order() / sp.order()) as u64).is_multiple_of(p), || {
                format!("{}/{preset}: bad Sylow {p}-subgroup of order {}", s.name, sp.order())
            })?;
            all &= decide_group(&s.surface, &sp).map_err(|e| e.to_string())?.unirational;
        }
        ensure(whole == all, || format!("{}/{preset}: G gives {whole}, Sylow subgroups give {all}", s.name))?;
        checked += 1;
    }
    Ok(format!("{checked} presets"))
}

/// Presets small enough for repeated decisions under random coordinates.
pub const MODEST_PRESETS: [(&str, &str); 7] = [
    ("clebsch", "A5"),
    ("fermat", "typeII"),
    ("cyclic_cubic", "H33"),
    ("diagonal_quartic", "obstructionC"),
    ("p2", "obstructionB"),
    ("p1xp1_quadric", "obstructionA"),
    ("a4_cubic", "A4"),
];

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = Matrix::from_ints(&refs);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn conjugation_invariance(trials: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    for (name, preset) in MODEST_PRESETS {
        let s = spec(name);
        let gens = s.preset_generators(preset).map_err(|e| e.to_string())?;
        let base = decide(&s.surface, &gens).map_err(|e| e.to_string())?;
        for t in 0..trials {
            let h = ProjElement::new(random_invertible(&mut rng, s.surface.nvars())).map_err(|e| e.to_string())?;
            let eqs = s
                .surface
                .equations()
                .iter()
                .map(|f| act_on_poly(&h, f))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            let moved = SurfaceModel::new(s.surface.kind(), eqs).map_err(|e| e.to_string())?;
            let moved_gens: Vec<ProjElement> = gens.iter().map(|g| g.conjugate_by(&h)).collect();
            let r = decide(&moved, &moved_gens).map_err(|e| format!("{name}/{preset} trial {t}: {e}"))?;
            ensure(r.unirational == base.unirational && r.obstructions() == base.obstructions(), || {
                format!(
                    "{name}/{preset} trial {t}: {} {:?} versus {} {:?}",
                    r.unirational,
                    r.obstructions(),
                    base.unirational,
                    base.obstructions()
                )
            })?;
        }
    }
    Ok(format!("{trials} coordinate changes for each of {} families", MODEST_PRESETS.len()))
}

/// Points `(a, -a, b, -b, 0)` of the Clebsch surface in any coordinate order, with `x5` dropped.
fn clebsch_point(rng: &mut ChaCha8Rng) -> ProjPoint {
    let a = rng.gen_range(1..=5);
    let b = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut v = [a, -a, b, -b, 0];
    v.shuffle(rng);
    ProjPoint::from_ints(&v[..4]).expect("nonzero point")
}

pub fn omega_equivariance(pairs: usize) -> Check {
    let s = spec("clebsch");
    let g = s.preset_group("S5", DEFAULT_CAP).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    let mut attempts = 0;
    while done < pairs {
        attempts += 1;
        if attempts > 50 * pairs {
            return Err(format!("only {done} defined pairs found"));
        }
        let p = clebsch_point(&mut rng);
        let q = clebsch_point(&mut rng);
        let Ok(r) = third_point(&s.surface, &p, &q) else { continue };
        let e = g.element(rng.gen_range(0..g.order()));
        let gp = p.apply(e).map_err(|e| e.to_string())?;
        let gq = q.apply(e).map_err(|e| e.to_string())?;
        let Ok(gr) = third_point(&s.surface, &gp, &gq) else { continue };
        let expected = r.point.apply(e).map_err(|e| e.to_string())?;
        ensure(gr.point == expected, || format!("omega({gp}, {gq}) = {} but g.omega = {expected}", gr.point))?;
        done += 1;
    }
    Ok(format!("{done} defined pairs"))
}

pub fn no_unlabeled_witnesses() -> Check {
    let mut witnesses = 0;
    for (s, preset) in all_presets() {
        let gens = s.preset_generators(&preset).map_err(|e| e.to_string())?;
        let r = decide(&s.surface, &gens).map_err(|e| e.to_string())?;
        for w in &r.witnesses {
            ensure(w.obstruction != Obstruction::Unlabeled, || {
                format!("{}/{preset}: unlabeled witness {}", s.name, w.structure)
            })?;
            witnesses += 1;
        }
    }
    Ok(format!("{witnesses} witnesses, all labeled"))
}

pub fn criterion_9() -> Check {
    let parts = [
        ("cyclic", cyclic_subgroups_have_fixed_points()),
        ("sylow", sylow_consistency()),
        ("conjugation", conjugation_invariance(20)),
        ("omega", omega_equivariance(20)),
        ("labels", no_unlabeled_witnesses()),
    ];
    let mut summary = Vec::new();
    for (name, r) in parts {
        summary.push(format!("{name}: {}", r.map_err(|e| format!("{name}: {e}"))?));
    }
    Ok(summary.join("; "))
}

pub fn random_subgroup(rng: &mut ChaCha8Rng, g: &ProjGroup) -> ProjGroup {
    let k = rng.gen_range(1..=2);
    let gens: Vec<ProjElement> = (0..k).map(|_| g.element(rng.gen_range(0..g.order())).clone()).collect();
    generate_in(g.n(), &gens, DEFAULT_CAP).expect("subgroup of a finite group")
}

pub fn criterion_10() -> Check {
    let lines = fermat_lines();
    ensure(lines.len() == 27, || format!("{} lines", lines.len()))?;
    let trivial = ProjGroup::trivial(4);
    let r = invariant_picard_rank(&trivial, &lines).map_err(|e| e.to_string())?;
    ensure(r == 7, || format!("rank {r} for the trivial group"))?;
    let full = spec("fermat").preset_group("full", DEFAULT_CAP).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let mut orders = Vec::new();
    for _ in 0..10 {
        let h = random_subgroup(&mut rng, &full);
        let a = invariant_picard_rank(&h, &lines).map_err(|e| e.to_string())?;
        let b = invariant_picard_rank_echelon(&h, &lines).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("subgroup of order {}: trace {a}, echelon {b}", h.order()))?;
        orders.push(h.order());
    }
    Ok(format!("27 lines, rank 7, ranks agree on subgroups of orders {orders:?}"))
}

pub const CRITERIA: [fn() -> Check; 10] = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
];
