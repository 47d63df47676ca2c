//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use klrw_core::klrw::element::nil_hecke_idempotent;
use klrw_core::klrw::graded::graded_piece_dimension;
use klrw_core::klrw::relations::relation_suite;
use klrw_core::klrw::{CrossingSign, Problem, Word};
use klrw_core::ladder::ogz::{check_intertwiner, elementary_in_block, CFactor};
use klrw_core::ladder::LadderContext;
use klrw_core::multisegment::{enumerate_flavored, enumerate_segmentations, multisegment_of_segmentation, FlavoredMultisegment, Segment};
use klrw_core::quiver::{act, canonical_rep, classify, GroupElement};
use klrw_core::sampling::random_invariant;
use klrw_core::weights::{chi_minus, chi_plus, enumerate_gt_patterns, mu_of_chi, word_of_gt_weight, GTWeight, SlWeight};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Weakly increasing tuples of length `n` with entries in `lo..=hi`.
fn increasing(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (lo..=hi).combinations_with_replacement(n).collect()
}

/// One representative `χ` per pattern of equalities among `n` entries.
fn block_patterns(n: usize) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    (0..1usize << (n - 1))
        .map(|cuts| {
            let mut chi = vec![0i64];
            for k in 0..n - 1 {
                let last = chi[k];
                chi.push(if cuts >> k & 1 == 1 { last + 1 } else { last });
            }
            chi
        })
        .collect()
}

fn local_relations() -> Outcome {
    let checks = relation_suite(3, 4, CrossingSign::Consistent);
    let failed: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
    let kinds: BTreeSet<&str> = checks.iter().map(|c| c.relation).collect();
    let red = checks.iter().filter(|c| c.involves_red).count();
    ensure(failed.is_empty(), || format!("{} of {} checks failed, first {:?}", failed.len(), checks.len(), failed[0]))?;
    ensure(red > 0, || "no instance involved a red strand".into())?;
    Ok(format!("{} exact identities ({red} with a red strand) over {kinds:?}", checks.len()))
}

fn two_strand_multisegments() -> Outcome {
    let distinct = enumerate_flavored(&Problem::new(2, vec![1], vec![0, 1]).unwrap()).len();
    let equal = enumerate_flavored(&Problem::new(2, vec![1], vec![0, 0]).unwrap()).len();
    ensure(distinct == 3 && equal == 2, || format!("found {distinct} and {equal}, expected 3 and 2"))?;
    Ok("3 multisegments for distinct flavors, 2 for equal".into())
}

fn good_words() -> Outcome {
    let seg = |a, b| Segment::new(a, b).unwrap();
    let word = |c1: i64, c2: i64| {
        FlavoredMultisegment::new(3, vec![seg(1, 1), seg(2, 2), seg(1, 2)], vec![(seg(1, 3), c2), (seg(2, 3), c1)])
            .unwrap()
            .good_word()
    };
    let got = [word(1, 0), word(0, 1), word(0, 0)];
    let texts: Vec<String> = got.iter().map(ToString::to_string).collect();
    ensure(texts[0] == "1,2,1,2,3,2,1,3,2" && texts[1] == "1,2,1,2,3,2,3,2,1", || format!("got {texts:?}"))?;
    ensure(
        got[2].letters() == [1, 2, 1, 2, 3, 3, 2, 2, 1] && got[2].entries().iter().any(|&(l, a)| l == 3 && a == 2),
        || format!("merged flavors gave {}", texts[2]),
    )?;
    Ok(format!("{texts:?}"))
}

fn gt_words() -> Outcome {
    let rows = |r2: Vec<i64>| GTWeight::new(vec![vec![1], r2, vec![1, 2, 3]]).unwrap();
    let grouped = word_of_gt_weight(&rows(vec![4, 4]));
    let split = word_of_gt_weight(&rows(vec![4, 5]));
    ensure(grouped.to_string() == "3,1,3,3,2^2", || format!("got {grouped}"))?;
    ensure(split.to_string() == "3,1,3,3,2,2", || format!("got {split}"))?;
    for n in 1..=5u32 {
        let trivial = GTWeight::new((1..=n as i64).map(|k| (1..=k).collect()).collect()).unwrap();
        let expected: Vec<u32> = (1..=n).flat_map(|k| (k..=n).rev()).collect();
        let got = word_of_gt_weight(&trivial);
        ensure(got == Word::from_letters(&expected), || format!("trivial weight for n = {n} gave {got}"))?;
    }
    Ok(format!("{grouped} and {split}; trivial words for n <= 5"))
}

fn orbit_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut problems, mut orbits) = (0, 0);
    for m in 1..=3u32 {
        for n in 0..=6usize {
            let budget = 6 - n;
            for v in (0..m as usize - 1).map(|_| 0..=budget).multi_cartesian_product().filter(|v| v.iter().sum::<usize>() <= budget) {
                for chi in block_patterns(n) {
                    let p = Problem::new(m, v.clone(), chi.clone()).unwrap();
                    problems += 1;
                    for s in enumerate_segmentations(&p).map_err(|e| e.to_string())? {
                        let expected = multisegment_of_segmentation(&s, &chi).map_err(|e| e.to_string())?;
                        let r = canonical_rep(&s, &chi).map_err(|e| e.to_string())?;
                        let got = classify(&r);
                        ensure(got == expected, || format!("{p:?}: canonical rep of {expected} classified as {got}"))?;
                        for _ in 0..20 {
                            let g = GroupElement::random(&p, &mut rng);
                            let moved = classify(&act(&g, &r).map_err(|e| e.to_string())?);
                            ensure(moved == expected, || format!("{p:?}: {expected} moved to {moved}"))?;
                        }
                        orbits += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{orbits} orbits over {problems} problems, 20 random group elements each"))
}

fn weight_shifts() -> Outcome {
    let mut checked = 0;
    for n in 0..=5 {
        for chi in increasing(n, -3, 3) {
            for i in -4..=3 {
                if let Some(up) = chi_plus(&chi, i) {
                    ensure(mu_of_chi(&up) == mu_of_chi(&chi).add(&SlWeight::alpha(i)), || format!("raising {chi:?} at {i}"))?;
                    checked += 1;
                }
                if let Some(down) = chi_minus(&chi, i) {
                    ensure(mu_of_chi(&down) == mu_of_chi(&chi).sub(&SlWeight::alpha(i)), || format!("lowering {chi:?} at {i}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} raisings and lowerings"))
}

fn nil_hecke() -> Outcome {
    for a in 1..=4 {
        let e = nil_hecke_idempotent(a, 0, a);
        ensure(!e.is_zero() && e.compose(&e) == e, || format!("not idempotent for a = {a}"))?;
    }
    Ok("e'^2 = e' for a <= 4".into())
}

fn merge_integrality() -> Outcome {
    let configs: Vec<(Vec<i64>, i64, usize)> = vec![
        (vec![0, 1], 0, 1),
        (vec![0, 0, 1], 0, 1),
        (vec![0, 0, 1], 0, 2),
        (vec![0, 1, 1], 0, 1),
        (vec![0, 0, 1, 1], 0, 2),
        (vec![0, 0, 0, 1], 0, 2),
        (vec![1, 1, 1, 2, 2], 1, 2),
        (vec![0, 1, 1, 1, 2], 1, 1),
        (vec![0, 0, 0, 1, 1, 1], 0, 3),
        (vec![-1, 0, 0, 1, 1, 1], 0, 1),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    for k in 0..200 {
        let (chi, i, a) = &configs[k % configs.len()];
        let ctx = LadderContext::new(chi, *i, *a).map_err(|e| e.to_string())?;
        let f = random_invariant(&mut rng, chi.len(), &ctx.blocks_common(), 4);
        let g = ctx.merge(&f).map_err(|e| format!("{chi:?} i={i} a={a} f={f}: {e}"))?;
        for b in ctx.blocks_prime() {
            ensure(g.is_symmetric(&b.collect::<Vec<_>>()), || format!("merge of {f} for {chi:?} not symmetric"))?;
        }
        done += 1;
    }
    Ok(format!("{done} random inputs over {} configurations", configs.len()))
}

fn intertwiner() -> Outcome {
    let (mut cases, mut perturbed) = (0, 0);
    for n in 1..=2usize {
        let rows: Vec<Vec<Vec<i64>>> = (1..=n).map(|k| increasing(k, 0, 2)).collect();
        for lam in rows.iter().map(|r| r.iter().cloned()).multi_cartesian_product() {
            let lambda = GTWeight::new(lam.clone()).unwrap();
            for i in -1..=2 {
                let Some(top) = chi_plus(lambda.row(n), i) else { continue };
                let mut lp = lam.clone();
                lp[n - 1] = top.clone();
                let lambda_prime = GTWeight::new(lp).unwrap();
                for k in 0..=2 {
                    let p = elementary_in_block(n, &top, i, k);
                    for s in 0..=2 {
                        let r = check_intertwiner(&lambda, &lambda_prime, i, &p, s, CFactor::Full).map_err(|e| e.to_string())?;
                        ensure(r.holds, || format!("{lam:?} i={i} e{k} s={s}: {r:?}"))?;
                        cases += 1;
                        if r.terms.iter().any(|t| t.translated != "0") {
                            let q = check_intertwiner(&lambda, &lambda_prime, i, &p, s, CFactor::DropLast).map_err(|e| e.to_string())?;
                            ensure(!q.holds, || format!("perturbed check passed for {lam:?} i={i} e{k} s={s}"))?;
                            perturbed += 1;
                        }
                    }
                }
            }
        }
    }
    ensure(perturbed > 0, || "no nonzero case to perturb".into())?;
    Ok(format!("{cases} cases hold; dropping a factor of C breaks all {perturbed} nonzero ones"))
}

/// Counts label-preserving bijections with reds in order, weighted by the
/// number of dot monomials that fill the remaining degree.
fn brute_force_dimension(letters_src: &[u32], letters_tgt: &[u32], red: u32, d: i64) -> usize {
    let n = letters_src.len();
    let mut total = 0;
    for images in (0..n).permutations(n) {
        if (0..n).any(|s| letters_tgt[images[s]] != letters_src[s]) {
            continue;
        }
        let reds: Vec<usize> = (0..n).filter(|&s| letters_src[s] == red).map(|s| images[s]).collect();
        if reds.windows(2).any(|w| w[0] > w[1]) {
            continue;
        }
        let mut deg = 0i64;
        for a in 0..n {
            for b in a + 1..n {
                if images[a] > images[b] {
                    let (x, y) = (letters_src[a] as i64, letters_src[b] as i64);
                    deg += match (x - y).abs() {
                        0 => -2,
                        1 => 1,
                        _ => 0,
                    };
                }
            }
        }
        let rest = d - deg;
        if rest >= 0 && rest % 2 == 0 {
            // Monomials of degree rest/2 in n variables.
            let k = (rest / 2) as usize;
            total += binomial(k + n - 1, n - 1);
        }
    }
    total
}

fn binomial(a: usize, b: usize) -> usize {
    (0..b).fold(1, |acc, j| acc * (a - j) / (j + 1))
}

fn graded_dimensions() -> Outcome {
    let mut compared = 0;
    for (m, v) in [(2u32, vec![1usize]), (3, vec![1, 1])] {
        let p = Problem::new(m, v, vec![0]).unwrap();
        let words = p.enumerate_words().map_err(|e| e.to_string())?;
        for (src, tgt) in words.iter().cartesian_product(&words) {
            for d in 0..=4 {
                let got = graded_piece_dimension(&p, tgt, src, d).map_err(|e| e.to_string())?;
                let oracle = brute_force_dimension(&src.letters(), &tgt.letters(), m, d);
                ensure(got == oracle, || format!("m={m} {src} -> {tgt} degree {d}: {got} vs {oracle}"))?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} graded pieces match the diagram count"))
}

fn weyl_dimension(chi: &[i64]) -> i64 {
    let n = chi.len();
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..n {
        for j in i + 1..n {
            num *= chi[j] - chi[i];
            den *= (j - i) as i64;
        }
    }
    num / den
}

fn gt_pattern_counts() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        for chi in (1..=6i64).combinations(n) {
            let count = enumerate_gt_patterns(&chi).map_err(|e| e.to_string())?.len() as i64;
            ensure(count == weyl_dimension(&chi), || format!("{chi:?}: {count} patterns vs {}", weyl_dimension(&chi)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} characters match the Weyl dimension"))
}

// Runs without the test harness so the report is printed on every run.
fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("local relations in the polynomial representation", local_relations),
        ("flavored multisegments on two strands", two_strand_multisegments),
        ("good words of flavored multisegments", good_words),
        ("words of Gelfand-Tsetlin weights", gt_words),
        ("orbit classification round trip", orbit_round_trip),
        ("weights of raised and lowered characters", weight_shifts),
        ("nilHecke idempotents", nil_hecke),
        ("merge integrality and symmetry", merge_integrality),
        ("ladders intertwine the Gelfand-Zetlin raising operators", intertwiner),
        ("graded dimensions against the diagram basis", graded_dimensions),
        ("Gelfand-Tsetlin pattern counts", gt_pattern_counts),
    ];
    let mut failures = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", k + 1);
                failures.push(k + 1);
            }
        }
    }
    if failures.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failures:?}");
        ExitCode::FAILURE
    }
}
