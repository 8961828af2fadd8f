//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p prequant-core --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use prequant_core::extensions::gamma_elements;
use prequant_core::levels::{table_row, TableGroup};
use prequant_core::linalg::{q, Q};
use prequant_core::surfcalc::random_perturbation;
use prequant_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_groups(max_rank: usize) -> Vec<(RootSystem, Vec<CenterSubgroup>)> {
    LieType::all_up_to(max_rank)
        .into_iter()
        .map(|t| {
            let rs = RootSystem::new(t);
            let subs = all_subgroups(&center(&rs));
            (rs, subs)
        })
        .collect()
}

/// 1. Closed-form levels agree with the lattice computation.
fn table_reproduction() -> Check {
    let mut groups = Vec::new();
    for n in 2..=13u32 {
        for k in (1..=n).filter(|k| n % k == 0) {
            groups.push(TableGroup::SuModK { n, k });
        }
    }
    groups.extend((1..=12).map(|n| TableGroup::PSp { n }));
    groups.extend((7..=12).map(|n| TableGroup::So { n }));
    groups.extend((4..=8).map(|n| TableGroup::Po { n }));
    groups.extend((2..=4).map(|n| TableGroup::Ss { n }));
    groups.push(TableGroup::PE6);
    groups.push(TableGroup::PE7);
    for g in &groups {
        let row = table_row(*g).map_err(|e| format!("{g}: {e}"))?;
        ensure(row.agrees(), || {
            format!("{g}: closed form {} vs lattice {}", row.from_table, row.from_lattice)
        })?;
    }
    Ok(format!("{} groups agree exactly", groups.len()))
}

/// 2. The pairing is trivial exactly when the basic level divides the level.
fn splitting_equivalence() -> Check {
    let mut cases = 0;
    for (rs, subs) in all_groups(8) {
        for z in &subs {
            let lb = basic_level(&rs, z).map_err(|e| e.to_string())?.basic_level;
            for l in 1..=12u64 {
                let p = commutator_pairing(&rs, z, Level::new(l as i64).unwrap())
                    .map_err(|e| e.to_string())?;
                let trivial = pairing_is_trivial(&p).0;
                ensure(trivial == (l % lb == 0), || {
                    format!(
                        "{} |Z|={} l={l}: trivial={trivial}, l_b={lb}",
                        rs.lie_type(),
                        z.order()
                    )
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (type, subgroup, level) cases"))
}

/// 3. Antisymmetry, vanishing diagonal, biadditivity, representative independence.
fn pairing_algebra() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut groups = 0;
    for (rs, subs) in all_groups(8) {
        for z in &subs {
            let cg = z.ambient();
            let gamma = gamma_elements(z);
            let add = |a: &GammaElement, b: &GammaElement| GammaElement {
                first: cg.add(&a.first, &b.first),
                second: cg.add(&a.second, &b.second),
            };
            let reps = prequant_core::lattices::representatives(&rs, z).map_err(|e| e.to_string())?;
            for l in [1i64, 2, 3] {
                let level = Level::new(l).unwrap();
                let p = commutator_pairing(&rs, z, level).map_err(|e| e.to_string())?;
                let at = |a: &GammaElement, b: &GammaElement| p.get(a, b).expect("in Γ");
                for a in &gamma {
                    ensure(at(a, a).is_zero(), || format!("{}: q(z,z) != 0", rs.lie_type()))?;
                    for b in &gamma {
                        ensure((at(a, b) + at(b, a)).is_zero(), || {
                            format!("{}: antisymmetry fails", rs.lie_type())
                        })?;
                    }
                }
                // Biadditivity in the first slot.
                if gamma.len() <= 256 {
                    for a in &gamma {
                        for b in &gamma {
                            let ab = add(a, b);
                            for w in &gamma {
                                ensure(at(&ab, w) == at(a, w) + at(b, w), || {
                                    format!("{}: biadditivity fails", rs.lie_type())
                                })?;
                            }
                        }
                    }
                } else {
                    for _ in 0..20_000 {
                        let a = &gamma[rng.gen_range(0..gamma.len())];
                        let b = &gamma[rng.gen_range(0..gamma.len())];
                        let w = &gamma[rng.gen_range(0..gamma.len())];
                        ensure(at(&add(a, b), w) == at(a, w) + at(b, w), || {
                            format!("{}: biadditivity fails", rs.lie_type())
                        })?;
                    }
                }
                for _ in 0..100 {
                    let shifted: Vec<Vec<Q>> = reps
                        .iter()
                        .map(|r| r.iter().map(|x| x + q(rng.gen_range(-2..=2))).collect())
                        .collect();
                    let p2 = commutator_pairing_with_reps(&rs, z, level, &shifted)
                        .map_err(|e| e.to_string())?;
                    ensure(p2 == p, || {
                        format!("{} l={l}: pairing depends on representatives", rs.lie_type())
                    })?;
                }
            }
            groups += 1;
        }
    }
    Ok(format!("{groups} groups, levels 1-3, 100 lattice shifts each"))
}

/// 4. Quadrature of the cocycle 2-form reproduces the exact phases.
fn numeric_oracle() -> Check {
    let cfg64 = QuadratureConfig::new(64, 1e-9).unwrap();
    let cfg256 = QuadratureConfig::new(256, 1e-6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut worst, mut worst_pert, mut checks) = (0.0f64, 0.0f64, 0);
    for (rs, subs) in all_groups(4) {
        for z in subs.iter().filter(|z| !z.is_trivial()) {
            let lattice = intermediate_lattice(&rs, z).map_err(|e| e.to_string())?;
            let id = z.ambient().identity();
            let gens: Vec<GammaElement> = z
                .generators()
                .iter()
                .flat_map(|g| {
                    [
                        GammaElement { first: g.clone(), second: id.clone() },
                        GammaElement { first: id.clone(), second: g.clone() },
                    ]
                })
                .collect();
            let maps: Vec<TorusMap> = gens
                .iter()
                .map(|g| build_torus_map(&rs, z.ambient(), &lattice, g))
                .collect::<Result<_>>()
                .map_err(|e| e.to_string())?;
            for l in 1..=6 {
                let level = Level::new(l).unwrap();
                let exact = commutator_pairing(&rs, z, level).map_err(|e| e.to_string())?;
                for (i, a) in gens.iter().enumerate() {
                    for (j, b) in gens.iter().enumerate() {
                        let target = exact.get(a, b).unwrap().to_unit_complex();
                        let c = numeric_commutator(&maps[i], &maps[j], level, &cfg64)
                            .map_err(|e| e.to_string())?;
                        worst = worst.max((c - target).norm());
                        checks += 1;
                    }
                }
            }
            // Perturbed maps at level 1 and the basic level.
            let lb = basic_level(&rs, z).map_err(|e| e.to_string())?.basic_level as i64;
            for l in [1, lb] {
                let level = Level::new(l).unwrap();
                let exact = commutator_pairing(&rs, z, level).map_err(|e| e.to_string())?;
                for (i, a) in gens.iter().enumerate() {
                    for (j, b) in gens.iter().enumerate() {
                        let target = exact.get(a, b).unwrap().to_unit_complex();
                        let pa = maps[i]
                            .clone()
                            .with_perturbation(random_perturbation(&mut rng, rs.rank(), 3, 3, 0.3));
                        let pb = maps[j]
                            .clone()
                            .with_perturbation(random_perturbation(&mut rng, rs.rank(), 3, 3, 0.3));
                        let c = numeric_commutator(&pa, &pb, level, &cfg256)
                            .map_err(|e| e.to_string())?;
                        worst_pert = worst_pert.max((c - target).norm());
                    }
                }
            }
        }
    }
    ensure(worst < 1e-9, || format!("max deviation {worst:e} >= 1e-9 at N=64"))?;
    ensure(worst_pert < 1e-6, || {
        format!("max perturbed deviation {worst_pert:e} >= 1e-6 at N=256")
    })?;
    Ok(format!(
        "{checks} commutators, max deviation {worst:.3e} (N=64), perturbed {worst_pert:.3e} (N=256)"
    ))
}

/// 5. Splitting levels carry |Z|² pre-quantum line bundles.
fn classification_counts() -> Check {
    let examples = [(TableGroup::PE6, 3, 9), (TableGroup::SuModK { n: 2, k: 2 }, 2, 4)];
    for (g, l, count) in examples {
        let (rs, z) = g.realize().map_err(|e| e.to_string())?;
        let r = classify(&rs, &z, Level::new(l).unwrap(), g.to_string()).map_err(|e| e.to_string())?;
        ensure(r.splits && r.line_bundle_count == count, || {
            format!("{g} level {l}: splits={} count={}", r.splits, r.line_bundle_count)
        })?;
    }
    let mut cases = 0;
    for (rs, subs) in all_groups(8) {
        for z in &subs {
            for l in 1..=6 {
                let r = classify(&rs, z, Level::new(l).unwrap(), "").map_err(|e| e.to_string())?;
                let expect = if r.splits { (z.order() * z.order()) as u64 } else { 0 };
                ensure(r.line_bundle_count == expect, || {
                    format!("{} |Z|={} l={l}: count {}", rs.lie_type(), z.order(), r.line_bundle_count)
                })?;
                ensure(r.splits == (l as u64 % r.basic_level == 0), || "splitting mismatch".into())?;
                cases += 1;
            }
        }
    }
    Ok(format!("PE6@3 -> 9, SO(3)@2 -> 4, {cases} swept cases"))
}

fn expected_center(t: LieType) -> Vec<i64> {
    let n = t.rank() as i64;
    match (t.family(), n) {
        (Family::A, _) => vec![n + 1],
        (Family::B, _) | (Family::C, _) => vec![2],
        (Family::D, _) if n % 2 == 1 => vec![4],
        (Family::D, _) => vec![2, 2],
        (Family::E, 6) => vec![3],
        (Family::E, 7) => vec![2],
        _ => vec![],
    }
}

/// 6. Center orders, integrality of B on Λ × coweights, and lattice indices.
fn structural_invariants() -> Check {
    let types = LieType::all_up_to(12);
    for &t in &types {
        let rs = RootSystem::new(t);
        let cg = center(&rs);
        ensure(cg.invariant_factors() == expected_center(t).as_slice(), || {
            format!("{t}: center {:?}", cg.invariant_factors())
        })?;
        for i in 0..t.rank() {
            let e: Vec<Q> = (0..t.rank()).map(|k| q((k == i) as i64)).collect();
            for j in 0..t.rank() {
                let b = rs.pair(&e, &rs.fundamental_coweight(j)).unwrap();
                ensure(b.is_integer(), || format!("{t}: B(α{i}, ω{j}) = {b}"))?;
            }
        }
    }
    let mut subgroups = 0;
    for (rs, subs) in all_groups(8) {
        for z in &subs {
            let lat = intermediate_lattice(&rs, z).map_err(|e| e.to_string())?;
            ensure(lat.index_over_coroot() == q(z.order() as i64), || {
                format!("{}: index {} vs |Z| {}", rs.lie_type(), lat.index_over_coroot(), z.order())
            })?;
            subgroups += 1;
        }
    }
    Ok(format!("{} types rank <= 12, {subgroups} subgroups rank <= 8", types.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 6] = [
        ("1 table reproduction", table_reproduction, Duration::from_secs(5)),
        ("2 splitting iff l_b | l", splitting_equivalence, Duration::from_secs(30)),
        ("3 pairing algebra", pairing_algebra, Duration::MAX),
        ("4 numeric oracle agreement", numeric_oracle, Duration::from_secs(120)),
        ("5 classification counts", classification_counts, Duration::MAX),
        ("6 structural invariants", structural_invariants, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > budget => Err(format!(
                "{detail}; took {:.2}s, over the {}s budget",
                elapsed.as_secs_f64(),
                budget.as_secs()
            )),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS  {name}: {detail} ({:.2}s)", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} ({:.2}s)", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
