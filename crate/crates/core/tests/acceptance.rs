//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runtime limits are part of each criterion.

mod common;

use std::time::{Duration, Instant};

use diffset::bent::{is_bent_ds, is_bent_ds_with, walsh_oracle, BooleanFunction};
use diffset::characters::{char_sum, enumerate_characters, psi_all, psi_eval, CharacterPoint, CharacterProfile};
use diffset::designs::{
    difference_table, translate, verify, verify_generalized, DesignParams, GeneralizedParams, Method, Witness,
};
use diffset::ringpoly::{fold_polynomial, kappa, kappa_unreduced};
use diffset::search::{export_system, search, SearchConfig};
use diffset::{GroupSpec, RingElement, Subset};

use common::{brute_force, illustration1, illustration2, order_tuples, ryser_pairs, walsh_fwht};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z44() -> GroupSpec {
    GroupSpec::new(&[4, 4]).unwrap()
}

const METHODS: [Method; 4] = [
    Method::Definition,
    Method::GroupRing,
    Method::IdealMembership,
    Method::CharactersExact,
];

fn illustration_one() -> Check {
    let g = z44();
    let d = illustration1(&g);
    let p = DesignParams::new(16, 6, 2).unwrap();
    for m in METHODS.into_iter().chain([Method::CharactersFloat, Method::All]) {
        let c = verify(&d, &p, m).map_err(|e| e.to_string())?;
        ensure(c.verdict && c.witness.is_none(), || format!("method {m} rejected"))?;
    }
    let kap = kappa(&d, 6, 2).map_err(|e| e.to_string())?;
    ensure(kap.is_zero() && kap.is_in_ideal(), || format!("kappa normal form is {kap}"))?;
    let folded = fold_polynomial(&kappa_unreduced(&d, 6, 2).unwrap(), &g).unwrap();
    ensure(folded.is_zero(), || "unreduced kappa does not fold to zero".into())?;
    let reports = psi_all(&d, 6, 2).unwrap();
    ensure(reports.len() == 16 && reports.iter().all(|r| r.is_zero), || {
        "some Psi value is nonzero".into()
    })?;
    // xi = (i, -i) is the character with exponents (1, 3)
    let chi = CharacterPoint::new(&g, &[1, 3]).unwrap();
    let s = char_sum(&d, &chi).unwrap();
    ensure(s.as_integer() == Some(-2), || format!("chi(D) at (i,-i) is {s}"))?;
    let psi = psi_eval(&d, 6, 2, &chi).unwrap();
    ensure(psi.is_zero && psi.value.coeffs().len() == 4, || "Psi(i,-i) is not exactly zero".into())?;
    Ok("accepted by all methods; kappa = 0; 16/16 Psi values exactly 0; chi(D) at (i,-i) = -2".into())
}

fn illustration_two() -> Check {
    let g = z44();
    let d = illustration2(&g);
    let p = DesignParams::new(16, 6, 2).unwrap();
    let c = verify(&d, &p, Method::CharactersExact).map_err(|e| e.to_string())?;
    ensure(!c.verdict, || "accepted".into())?;
    match &c.witness {
        Some(Witness::Character { character, roots, value, .. }) => {
            ensure(character.exps() == [0, 2] && roots == &["1", "-1"], || {
                format!("witness at {character}")
            })?;
            ensure(value.as_integer() == Some(-4), || format!("Psi = {value}"))?;
        }
        w => return Err(format!("unexpected witness {w:?}")),
    }
    ensure(c.recheck(&d).unwrap(), || "witness does not recheck".into())?;
    for m in METHODS {
        ensure(!verify(&d, &p, m).unwrap().verdict, || format!("{m} accepted"))?;
    }
    let chi = CharacterPoint::new(&g, &[0, 2]).unwrap();
    let direct = psi_eval(&d, 6, 2, &chi).unwrap();
    ensure(direct.value.as_integer() == Some(-4), || "direct Psi(1,-1) differs".into())?;
    Ok("rejected; witness Psi(1,-1) = -4 exactly".into())
}

fn criterion_equivalence() -> Check {
    let tuples = order_tuples(16, 3, 1);
    let mut subsets = 0u64;
    let mut instances = 0u64;
    let mut accepted = 0u64;
    for orders in &tuples {
        let g = GroupSpec::new(orders).unwrap();
        let v = g.order();
        let pairs = ryser_pairs(v as u64);
        for mask in 0u64..1 << v {
            let d = Subset::from_mask(&g, mask).unwrap();
            let size = d.len() as u64;
            let table = difference_table(&d);
            let rho = RingElement::from_subset(&d);
            let product = rho.multiply(&rho.reflect()).unwrap();
            let profile = CharacterProfile::new(&d);
            subsets += 1;
            for &(k, l) in &pairs {
                instances += 1;
                let def = table.counts[0] == k && table.counts[1..].iter().all(|&c| c == l);
                let ring = product.coeff(0) == k as i64
                    && product.coeffs()[1..].iter().all(|&c| c == l as i64);
                let ideal = fold_polynomial(&kappa_unreduced(&d, k, l).unwrap(), &g)
                    .unwrap()
                    .is_in_ideal();
                let chars = profile.psi_vanishes(k, l);
                if !(def == ring && ring == ideal && ideal == chars) {
                    return Err(format!(
                        "{orders:?} {{{d}}} (k,lambda)=({k},{l}): definition {def}, group ring {ring}, ideal {ideal}, characters {chars}"
                    ));
                }
                if size == k {
                    let p = DesignParams::new(v as u64, k, l).unwrap();
                    for m in METHODS {
                        let c = verify(&d, &p, m).unwrap();
                        if c.verdict != def {
                            return Err(format!("{orders:?} {{{d}}} ({k},{l}): verify({m}) = {}", c.verdict));
                        }
                    }
                }
                accepted += def as u64;
            }
        }
    }
    Ok(format!(
        "{} order tuples, {subsets} subsets, {instances} (subset, k, lambda) instances, {accepted} accepted; all four methods identical",
        tuples.len()
    ))
}

fn search_correctness() -> Check {
    let z7 = GroupSpec::new(&[7]).unwrap();
    let r = search(&z7, &SearchConfig::new(DesignParams::new(7, 3, 1).unwrap())).unwrap();
    ensure(r.sets == brute_force(&z7, 3, 1), || "Z7 search differs from brute force".into())?;
    ensure(r.sets.contains(&Subset::from_ranks(&z7, [1, 2, 4]).unwrap()), || "{1,2,4} missing".into())?;

    let g = z44();
    let p = DesignParams::new(16, 6, 2).unwrap();
    let r = search(&g, &SearchConfig::new(p)).unwrap();
    ensure(r.sets.contains(&illustration1(&g)), || "worked example 1 set missing".into())?;
    for d in &r.sets {
        ensure(verify(d, &p, Method::Definition).unwrap().verdict, || format!("{{{d}}} fails definition"))?;
    }
    let mut sorted = r.sets.clone();
    sorted.sort();
    for shift in g.elements() {
        let mut moved: Vec<Subset> = r.sets.iter().map(|d| translate(d, &shift).unwrap()).collect();
        moved.sort();
        ensure(moved == sorted, || format!("not closed under translation by {shift}"))?;
    }
    Ok(format!(
        "Z7: {} sets = brute force; Z4xZ4 (16,6,2): {} sets, all pass definition, translation-closed",
        brute_force(&z7, 3, 1).len(),
        r.sets.len()
    ))
}

fn bent_agreement() -> Check {
    let mut by_ds = 0u32;
    let mut by_walsh = 0u32;
    for tt in 0u32..1 << 16 {
        let f = BooleanFunction::from_fn(4, |r| tt >> r & 1 == 1).unwrap();
        let ds = is_bent_ds(&f).unwrap().bent;
        let w = walsh_oracle(&f).bent;
        if ds != w {
            return Err(format!("disagreement at {f}: difference set {ds}, walsh {w}"));
        }
        by_ds += ds as u32;
        by_walsh += w as u32;
    }
    ensure(by_ds == by_walsh, || "counts differ".into())?;
    Ok(format!("65536 functions, {by_ds} bent by both methods"))
}

fn illustration_three() -> Check {
    let mut sizes = Vec::new();
    for (m, expected) in [(1usize, 1u64), (2, 6), (3, 28)] {
        let f = BooleanFunction::inner_product(m).unwrap();
        let t = 2 * m as u32;
        let formula = (1u64 << (t - 1)) - (1u64 << ((t - 2) / 2));
        let r = is_bent_ds(&f).unwrap();
        ensure(r.bent && r.k == expected && r.k == formula, || {
            format!("inner product m={m}: bent {} size {}", r.bent, r.k)
        })?;
        sizes.push(r.k);
    }
    let ip2 = BooleanFunction::inner_product(2).unwrap();
    let f = ip2.direct_sum(&ip2).unwrap();
    let r = is_bent_ds_with(&f, Method::CharactersExact).unwrap();
    ensure(r.bent && r.k == 120 && r.lambda == Some(56), || format!("t=8 direct sum: {r:?}"))?;
    ensure(walsh_oracle(&f).bent, || "Walsh oracle disagrees at t=8".into())?;
    Ok(format!("sizes {sizes:?}; direct sum of two m=2 inner products is a (256,120,56) difference set"))
}

fn pow2(e: u32) -> i128 {
    1i128 << e
}

fn case_three_identity() -> Check {
    let mut checked = 0;
    for t1 in [4u32, 6, 8, 10] {
        for t2 in [4u32, 6, 8, 10] {
            let (h1, h2) = ((t1 - 2) / 2, (t2 - 2) / 2);
            let d1 = pow2(t1 - 1) - pow2(h1);
            let d2 = pow2(t2 - 1) - pow2(h2);
            let c1 = pow2(t1 - 1) + pow2(h1);
            let c2 = pow2(t2 - 1) + pow2(h2);
            let lhs = c2 * c2 * d1 * d1
                + c1 * c1 * d2 * d2
                + 2 * (pow2(2 * t1 - 2) - pow2(t1 - 2)) * (pow2(2 * t2 - 2) - pow2(t2 - 2));
            let t = t1 + t2;
            let rhs = pow2(t) * (pow2(t - 2) - pow2((t - 2) / 2)) + (pow2(t - 1) - pow2(t - 2));
            ensure(lhs == rhs, || format!("t1={t1}, t2={t2}: {lhs} != {rhs}"))?;
            // the trivial-character value |D|^2 of the direct sum, computed independently
            let size = d1 * c2 + c1 * d2;
            ensure(size * size == lhs, || format!("t1={t1}, t2={t2}: |D|^2 mismatch"))?;
            let closed = pow2(2 * t - 2) + pow2(t - 2) - pow2(3 * t / 2 - 1);
            ensure(closed == rhs, || format!("t1={t1}, t2={t2}: simplified form differs"))?;
            checked += 1;
        }
    }
    // and against real supports where they are small enough to build
    for (m1, m2) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let f = BooleanFunction::inner_product(m1)
            .unwrap()
            .direct_sum(&BooleanFunction::inner_product(m2).unwrap())
            .unwrap();
        let t = 2 * (m1 + m2) as u32;
        let expected = pow2(t - 1) - pow2((t - 2) / 2);
        ensure(f.weight() as i128 == expected, || format!("support size at m=({m1},{m2})"))?;
        let w = walsh_fwht(&f.table().iter().map(|b| *b).collect::<Vec<_>>());
        ensure(w.iter().all(|x| x.abs() == 1 << (t / 2)), || format!("m=({m1},{m2}) not bent"))?;
    }
    Ok(format!("{checked} (t1, t2) pairs exact in i128; support sizes confirmed up to t = 12"))
}

fn generalized_reduction() -> Check {
    let tuples = order_tuples(12, 3, 1);
    let mut cases = 0u64;
    for orders in &tuples {
        let g = GroupSpec::new(orders).unwrap();
        let v = g.order();
        let identity = Subset::from_ranks(&g, [0]).unwrap();
        for mask in 0u64..1 << v {
            let d = Subset::from_mask(&g, mask).unwrap();
            let k = d.len() as u64;
            if k <= 1 {
                continue;
            }
            for l2 in 0..=k {
                let gp = GeneralizedParams::new(identity.clone(), 0, l2).unwrap();
                let gen = verify_generalized(&d, &gp, k, Method::All).unwrap();
                let plain = verify(&d, &DesignParams::new(v as u64, k, l2).unwrap(), Method::All).unwrap();
                if gen.verdict != plain.verdict || !gen.methods_agree() || !plain.methods_agree() {
                    return Err(format!("{orders:?} {{{d}}} lambda2={l2}: generalized {} plain {}", gen.verdict, plain.verdict));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{} order tuples, {cases} (subset, lambda2) cases with |D| > 1 agree", tuples.len()))
}

fn system_soundness() -> Check {
    let mut evaluated = 0;
    for (orders, k, l) in [(vec![7usize], 3u64, 1u64), (vec![4, 4], 6, 2)] {
        let g = GroupSpec::new(&orders).unwrap();
        let p = DesignParams::new(g.order() as u64, k, l).unwrap();
        let sys = export_system(&g, &p).unwrap();
        ensure(sys.generators.len() == 2 * g.order(), || "wrong generator count".into())?;
        for d in search(&g, &SearchConfig::new(p)).unwrap().sets {
            let values = sys.evaluate(&d).unwrap();
            ensure(values.iter().all(|c| c.is_zero()), || format!("{{{d}}} does not annihilate the system"))?;
            evaluated += 1;
        }
    }
    let g = z44();
    let sys = export_system(&g, &DesignParams::new(16, 6, 2).unwrap()).unwrap();
    let values = sys.evaluate(&illustration2(&g)).unwrap();
    ensure(values.iter().any(|c| c.as_integer() == Some(-4)), || "no generator evaluates to -4".into())?;
    let chars = enumerate_characters(&g);
    let at = chars.iter().position(|c| c.exps() == [0, 2]).unwrap();
    ensure(values[g.order() + at].as_integer() == Some(-4), || "Psi(1,-1) generator is not -4".into())?;
    Ok(format!("{evaluated} search results annihilate all generators; worked example 2 gives -4 at Psi(1,-1)"))
}

fn main() {
    let criteria: [(u32, &str, Duration, fn() -> Check); 9] = [
        (1, "worked example 1 reproduction", Duration::from_secs(1), illustration_one),
        (2, "worked example 2 reproduction", Duration::from_secs(1), illustration_two),
        (3, "criterion equivalence, v <= 16, t <= 3", Duration::from_secs(300), criterion_equivalence),
        (4, "search correctness", Duration::from_secs(120), search_correctness),
        (5, "bent oracle agreement, t = 4", Duration::from_secs(300), bent_agreement),
        (6, "inner-product bent functions", Duration::from_secs(120), illustration_three),
        (7, "direct-sum size identity", Duration::MAX, case_three_identity),
        (8, "generalized reduction, v <= 12", Duration::MAX, generalized_reduction),
        (9, "exported system soundness", Duration::MAX, system_soundness),
    ];
    let only: Option<u32> = std::env::args().nth(1).and_then(|a| a.parse().ok());
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let limit_text = if limit == Duration::MAX {
            "no limit".to_string()
        } else {
            format!("limit {}s", limit.as_secs())
        };
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        println!(
            "{} criterion {n}: {name} ({:.2}s, {limit_text}): {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        failed += !ok as u32;
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
