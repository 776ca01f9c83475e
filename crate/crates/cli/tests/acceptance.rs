//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wfg_core::algebra::{smith_normal_form, IntegerMatrix};
use wfg_core::analysis::{analyze_filtration, ring_demo, EventKind, Filtration};
use wfg_core::complex::{compute_maximal_tree, relabel, validate, EdgeKey, TreeStrategy, WeightedComplex};
use wfg_core::invariants::{
  abelianization, classify, lcs_free_ranks, realize, satisfies_exactly_two, weighted_homology_graph, witt_rank,
  CyclicFactorization,
};
use wfg_core::io::{complex_from_json, cover_from_json, filtration_from_json};
use wfg_core::vankampen::verify_van_kampen;
use wfg_core::AbelianGroup;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus(name: &str) -> PathBuf { PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name) }

fn load(name: &str) -> WeightedComplex {
  complex_from_json(&std::fs::read_to_string(corpus(name)).expect("corpus file")).expect("corpus complex")
}

fn wfg(args: &[&str]) -> (i32, String, String) {
  let out = Command::new(env!("CARGO_BIN_EXE_wfg")).args(args).output().expect("run wfg");
  (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
  if cond {
    Ok(())
  } else {
    Err(msg.into())
  }
}

fn group(free: usize, torsion: &[u32]) -> AbelianGroup {
  AbelianGroup { free_rank: free, torsion: torsion.iter().map(|&d| BigUint::from(d)).collect() }
}

fn criterion1() -> Outcome {
  let c = classify(&load("figure1.json")).map_err(|e| e.to_string())?;
  check(c.to_string() == "Z * Z/2 * Z/4", format!("classify gave {c}"))?;
  let path = corpus("figure1.json");
  let (code, out, _) = wfg(&["classify", path.to_str().unwrap()]);
  check(code == 0 && out.trim() == "Z * Z/2 * Z/4", format!("cli gave exit {code}: {out}"))?;
  Ok(c.to_string())
}

fn criterion2() -> Outcome {
  let k = load("figure1.json");
  let ab = abelianization(&k).map_err(|e| e.to_string())?;
  check(ab == group(1, &[2, 4]), format!("abelianization {ab}"))?;
  let h = weighted_homology_graph(&k.without_tree()).map_err(|e| e.to_string())?;
  check(h.h1 == group(1, &[]), format!("H1 = {}", h.h1))?;
  check(h.h0 == group(1, &[2]), format!("H0 = {}", h.h0))?;
  Ok(format!("Ab = {ab}; H1 = {}, H0 = {}", h.h1, h.h0))
}

fn criterion3() -> Outcome {
  let k = load("figure2.json");
  let c = classify(&k).map_err(|e| e.to_string())?;
  check(c.is_trivial(), format!("all-ones simplex gave {c}"))?;
  let mut cases = 0;
  for e in k.edge_keys().collect::<Vec<_>>() {
    for w in -9i64..=9 {
      if w.abs() == 1 {
        continue;
      }
      let mut kw = k.clone();
      kw.set_weight(e, w);
      let c = classify(&kw).map_err(|e| e.to_string())?;
      if w == 0 {
        check(c.orders() == [0], format!("weight 0 on {e:?} gave {c}"))?;
      } else {
        check(c.orders().contains(&w.unsigned_abs()), format!("weight {w} on {e:?} gave {c}"))?;
      }
      cases += 1;
    }
  }
  let weighted = classify(&load("figure2-weighted.json")).map_err(|e| e.to_string())?;
  check(weighted.to_string() == "Z/3", format!("weighted simplex gave {weighted}"))?;
  Ok(format!("all-ones trivial; {cases} single-edge reweightings nontrivial"))
}

fn criterion4() -> Outcome {
  let k = load("figure3.json");
  check(!satisfies_exactly_two(&k).map_err(|e| e.to_string())?, "exactly-two unexpectedly holds")?;
  let ab = abelianization(&k).map_err(|e| e.to_string())?;
  check(ab == group(2, &[2, 2, 2, 2, 2]), format!("abelianization {ab}"))?;
  let path = corpus("figure3.json");
  let (code, _, err) = wfg(&["classify", path.to_str().unwrap()]);
  check(code == 2 && err.contains("exactly-two condition fails at triangle (v1,v3,v4)"), format!("cli exit {code}: {err}"))?;
  Ok(format!("exactly-two fails; Ab = {ab}"))
}

fn criterion5() -> Outcome {
  let c = classify(&load("figure1-w0-2.json")).map_err(|e| e.to_string())?;
  check(c.orders() == [0, 0, 2], format!("group {c}"))?;
  let r = lcs_free_ranks(&c, 2, 16).map_err(|e| e.to_string())?;
  check(r.ranks == vec![BigUint::from(2u32), BigUint::from(1u32)], format!("ranks {r}"))?;
  let path = corpus("figure1-w0-2.json");
  let (code, out, _) = wfg(&["lcs", "--max-n", "2", path.to_str().unwrap()]);
  check(code == 0 && out.trim() == "R1=2 R2=1", format!("cli exit {code}: {out}"))?;
  Ok(r.to_string())
}

fn criterion6() -> Outcome {
  let start = Instant::now();
  let mut cases = 0;
  for m in 1..=4u64 {
    let g = CyclicFactorization::from(vec![0u64; m as usize]);
    let ranks = lcs_free_ranks(&g, 8, 16).map_err(|e| e.to_string())?;
    for n in 2..=8u64 {
      let expected = witt_rank(m, n);
      let got = ranks.rank(n as usize).cloned().unwrap_or_default();
      check(got == expected, format!("m={m} n={n}: {got} != {expected}"))?;
      cases += 1;
    }
  }
  let elapsed = start.elapsed();
  check(elapsed.as_secs_f64() < 10.0, format!("took {elapsed:?}"))?;
  Ok(format!("{cases} (m, n) pairs agree in {:.2}s", elapsed.as_secs_f64()))
}

fn criterion7() -> Outcome {
  let ones = cover_from_json(&std::fs::read_to_string(corpus("figure4-cover-ones.json")).unwrap()).map_err(|e| e.to_string())?;
  let r = verify_van_kampen(&ones);
  check(r.hypotheses_ok && r.abelianizations_equal, format!("all-ones: {}", r.hypotheses))?;
  check(r.direct_abelian == Some(AbelianGroup::free(2)), format!("all-ones Ab {:?}", r.direct_abelian))?;

  let weighted = cover_from_json(&std::fs::read_to_string(corpus("figure4-cover.json")).unwrap()).map_err(|e| e.to_string())?;
  let r = verify_van_kampen(&weighted);
  check(r.hypotheses_ok && r.abelianizations_equal, "weighted cover: abelianizations differ")?;
  // Z*Z*Z/w01*Z/w12*Z/w23*Z/w34*Z/w46*Z/w56*Z/w24 with weights (2,3,4,5,7,8,6)
  let displayed = CyclicFactorization::from(vec![0, 0, 2, 3, 4, 5, 7, 8, 6]);
  let (direct, predicted) = r.factorizations.clone().ok_or("no factorization")?;
  check(direct == displayed && predicted == displayed, format!("factorizations {direct} / {predicted}"))?;
  check(r.amalgamated_abelian == Some(displayed.abelianization()), "amalgamated abelianization")?;
  check(r.amalgamated_abelian == Some(group(2, &[2, 2, 12, 840])), "invariant factors")?;
  Ok(format!("(a) Z^2 on both sides; (b) {}", r.amalgamated_abelian.unwrap()))
}

fn criterion8() -> Outcome {
  let f = filtration_from_json(&std::fs::read_to_string(corpus("figure5-filtration.json")).unwrap()).map_err(|e| e.to_string())?;
  let r = analyze_filtration(&f, false).map_err(|e| e.to_string())?;
  let shown: Vec<String> = r.factorizations.iter().map(|o| CyclicFactorization::from(o.clone()).to_string()).collect();
  let expected_stages = ["Z * Z/2 * Z/2", "Z * Z * Z/2 * Z/2 * Z/3 * Z/3", "Z * Z/2 * Z/2 * Z/2 * Z/3 * Z/3"];
  check(shown == expected_stages, format!("stages {shown:?}"))?;
  let events: Vec<(usize, EventKind, u64, &str)> = r.events.iter().map(|e| (e.stage, e.kind, e.factor, e.region.as_str())).collect();
  let expected = vec![
    (1, EventKind::Birth, 0, "unknown"),
    (1, EventKind::Birth, 3, "right"),
    (1, EventKind::Birth, 3, "right"),
    (2, EventKind::Death, 0, "unknown"),
    (2, EventKind::Birth, 2, "left"),
  ];
  check(events == expected, format!("events {events:?}"))?;
  Ok("stage 1: +Z, +Z/3 x2 (right); stage 2: -Z, +Z/2 (left)".into())
}

fn criterion9() -> Outcome {
  let demo = ring_demo().map_err(|e| e.to_string())?;
  check(demo.pentagon.to_string() == "Z", format!("pentagon {}", demo.pentagon))?;
  check(demo.hexagon.to_string() == "Z * Z/2 * Z/2 * Z/2", format!("hexagon {}", demo.hexagon))?;
  check(demo.distinguishable, "rings not distinguished")?;
  let p = classify(&load("figure6-pentagon.json")).map_err(|e| e.to_string())?;
  let h = classify(&load("figure6-hexagon.json")).map_err(|e| e.to_string())?;
  check(p == demo.pentagon && h == demo.hexagon, "corpus rings disagree with the demo")?;
  Ok(format!("{} vs {}", demo.pentagon, demo.hexagon))
}

// ---------------------------------------------------------------------------------------
// Randomized property suites for criterion 10.

const CASES: u64 = 250;

/// Connected complex on up to `max_n` vertices: a random tree, random extra edges, and
/// triangles with exactly two tree faces when `triangles` is set.
fn random_complex(rng: &mut ChaCha8Rng, max_n: usize, triangles: bool) -> WeightedComplex {
  let n = rng.gen_range(1..=max_n);
  let mut tree = BTreeSet::new();
  for v in 1..n {
    tree.insert(EdgeKey(rng.gen_range(0..v), v));
  }
  let mut edges = tree.clone();
  for _ in 0..rng.gen_range(0..=n + 1) {
    let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
    if a != b {
      edges.insert(EdgeKey::new(a, b));
    }
  }
  let mut k = WeightedComplex::with_vertex_count(n);
  for e in &edges {
    k.insert_edge(e.0, e.1, rng.gen_range(-8..=8));
  }
  if triangles {
    for a in 0..n {
      for v in a + 1..n {
        for b in v + 1..n {
          let faces = [EdgeKey(a, b), EdgeKey(a, v), EdgeKey(v, b)];
          let in_tree = faces.iter().filter(|f| tree.contains(f)).count();
          if faces.iter().all(|f| edges.contains(f)) && in_tree == 2 && rng.gen_bool(0.5) {
            k = k.with_triangle(a, v, b);
          }
        }
      }
    }
  }
  k.with_tree_keys(tree)
}

fn reweight(k: &WeightedComplex, mut f: impl FnMut(i64) -> i64) -> WeightedComplex {
  let mut out = k.clone();
  for (e, w) in k.edges() {
    out.set_weight(e, f(w));
  }
  out
}

fn suite(name: &str, seed: u64, mut case: impl FnMut(&mut ChaCha8Rng) -> Result<(), String>) -> Result<(), String> {
  for i in 0..CASES {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(i));
    case(&mut rng).map_err(|e| format!("{name}, case {i}: {e}"))?;
  }
  Ok(())
}

fn sign_flip(rng: &mut ChaCha8Rng) -> Result<(), String> {
  let k = random_complex(rng, 7, true);
  let flipped = reweight(&k, |w| if rng.gen_bool(0.5) { -w } else { w });
  let (a, b) = (classify(&k).map_err(|e| e.to_string())?, classify(&flipped).map_err(|e| e.to_string())?);
  check(a == b, format!("{a} != {b}"))
}

fn unit_reduction(rng: &mut ChaCha8Rng) -> Result<(), String> {
  let k = random_complex(rng, 7, true);
  let units = reweight(&k, |_| if rng.gen_bool(0.5) { -1 } else { 1 });
  let ones = reweight(&k, |_| 1);
  let (a, b) = (classify(&units).map_err(|e| e.to_string())?, classify(&ones).map_err(|e| e.to_string())?);
  check(a == b, format!("{a} != {b}"))?;
  check(a.orders().iter().all(|&m| m == 0), format!("torsion in {a}"))
}

fn tree_independence(rng: &mut ChaCha8Rng) -> Result<(), String> {
  let w = rng.gen_range(-8..=8);
  let k = reweight(&random_complex(rng, 8, false), |_| w);
  let reference = classify(&k).map_err(|e| e.to_string())?;
  for strategy in [TreeStrategy::Bfs, TreeStrategy::KruskalMin, TreeStrategy::KruskalMax] {
    let t = compute_maximal_tree(&k, strategy).map_err(|e| e.to_string())?;
    let c = classify(&k.clone().with_tree_keys(t.edges)).map_err(|e| e.to_string())?;
    check(c == reference, format!("{strategy:?}: {c} != {reference}"))?;
  }
  Ok(())
}

fn relabel_invariance(rng: &mut ChaCha8Rng) -> Result<(), String> {
  let k = random_complex(rng, 7, true);
  let mut perm: Vec<usize> = (0..k.vertex_count()).collect();
  perm.shuffle(rng);
  let moved = relabel(&k, &perm).map_err(|e| e.to_string())?;
  check(validate(&moved).ok, "relabeled complex invalid")?;
  let (a, b) = (abelianization(&k).map_err(|e| e.to_string())?, abelianization(&moved).map_err(|e| e.to_string())?);
  check(a == b, format!("{a} != {b}"))
}

fn snf_contract(rng: &mut ChaCha8Rng) -> Result<(), String> {
  let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
  let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-15..=15)).collect()).collect();
  let a = IntegerMatrix::from_rows(c, &rows);
  let s = smith_normal_form(&a);
  check(s.u.mul(&a).mul(&s.v) == s.d, "U A V != D")?;
  check(s.d.is_diagonal(), "D not diagonal")?;
  let unit = |d: BigInt| d == BigInt::from(1) || d == BigInt::from(-1);
  check(unit(s.u.determinant()) && unit(s.v.determinant()), "U or V not unimodular")?;
  let diag = s.diagonal();
  for w in diag.windows(2) {
    let ok = if w[0] == BigInt::from(0) { w[1] == BigInt::from(0) } else { w[0] > BigInt::from(0) && &w[1] % &w[0] == BigInt::from(0) };
    check(ok, format!("divisibility fails on {diag:?}"))?;
  }
  Ok(())
}

fn filtration_conservation(rng: &mut ChaCha8Rng) -> Result<(), String> {
  let full = random_complex(rng, 7, false);
  let tree = full.tree().cloned().unwrap_or_default();
  let mut stages = vec![full.clone()];
  // peel non-tree edges off one at a time, then reverse into a filtration
  let mut extra: Vec<EdgeKey> = full.edge_keys().filter(|e| !tree.contains(e)).collect();
  extra.shuffle(rng);
  let mut current = full.clone();
  for e in extra {
    let mut smaller = WeightedComplex::with_vertex_count(current.vertex_count());
    for (k, w) in current.edges().filter(|(k, _)| *k != e) {
      smaller.insert_edge(k.0, k.1, w);
    }
    current = smaller.with_tree_keys(tree.clone());
    stages.push(current.clone());
  }
  stages.reverse();
  let regions: BTreeMap<i64, String> = (2..=8).map(|w| (w, format!("r{w}"))).collect();
  let r = analyze_filtration(&Filtration { stages, regions }, false).map_err(|e| e.to_string())?;
  for stage in 1..r.factorizations.len() {
    let mut acc = r.factorizations[stage - 1].clone();
    for e in r.events.iter().filter(|e| e.stage == stage) {
      match e.kind {
        EventKind::Death => {
          let i = acc.iter().position(|&m| m == e.factor).ok_or("death of an absent factor")?;
          acc.remove(i);
        },
        EventKind::Birth => acc.push(e.factor),
      }
    }
    acc.sort_unstable();
    check(acc == r.factorizations[stage], format!("stage {stage}: {acc:?} != {:?}", r.factorizations[stage]))?;
  }
  Ok(())
}

fn realize_round_trip(rng: &mut ChaCha8Rng) -> Result<(), String> {
  let orders: Vec<u64> = (0..rng.gen_range(0..8)).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(2..50) }).collect();
  let target = CyclicFactorization::from(orders);
  let c = classify(&realize(&target)).map_err(|e| e.to_string())?;
  check(c == target, format!("{c} != {target}"))
}

fn criterion10() -> Outcome {
  let start = Instant::now();
  suite("sign-flip", 1, sign_flip)?;
  suite("unit weights", 2, unit_reduction)?;
  suite("tree independence", 3, tree_independence)?;
  suite("relabeling", 4, relabel_invariance)?;
  suite("SNF contract", 5, snf_contract)?;
  suite("filtration conservation", 6, filtration_conservation)?;
  suite("realize round-trip", 7, realize_round_trip)?;
  let elapsed = start.elapsed();
  check(elapsed.as_secs_f64() < 60.0, format!("took {elapsed:?}"))?;
  Ok(format!("7 suites x {CASES} seeded cases in {:.2}s", elapsed.as_secs_f64()))
}

fn main() {
  let criteria: [Criterion; 10] = [
    ("figure1 corpus: classify = Z * Z/2 * Z/4", criterion1),
    ("figure1 corpus: abelianization vs weighted homology", criterion2),
    ("figure2 corpus: filled simplex", criterion3),
    ("figure3 corpus: exactly-two failure and abelianization", criterion4),
    ("lower central series R1=2 R2=1", criterion5),
    ("Witt necklace sweep", criterion6),
    ("figure4 corpus: van Kampen", criterion7),
    ("figure5 corpus: filtration events", criterion8),
    ("five- and six-ring demo", criterion9),
    ("randomized property suites", criterion10),
  ];
  let mut failed = 0;
  for (i, (name, run)) in criteria.iter().enumerate() {
    match run() {
      Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
      Err(why) => {
        failed += 1;
        println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
      },
    }
  }
  println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
  if failed > 0 {
    std::process::exit(1);
  }
}
