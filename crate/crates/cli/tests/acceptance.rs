//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p cmpcc-cli --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cmpcc::boolfn::{self, TruthTable};
use cmpcc::ccp::{protocol_from_tiling, trivial_protocol, verify_protocol, vertex_rectangles};
use cmpcc::cdt::{build_tree, min_depth_oracle, trivial_tree, verify_tree};
use cmpcc::fmatrix::{generate, rank, FunctionMatrix, Generator};
use cmpcc::rectpart::{
    chi_geom, chi_geom_tiling, min_partition, min_partition_oracle_with_cap, CellRegion,
};
use cmpcc::sample::{
    perturb_protocol, random_block_matrix, random_correct_protocol, random_matrix, random_protocol,
    random_region, random_table, random_tree,
};
use cmpcc::{ceil_log2, Protocol};
use cmpcc_cli::{parse_document, render, write_document, Document, TilingDoc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Number of maximal constant runs, counted directly on the value bits.
fn runs(values: &[bool]) -> u64 {
    1 + values.windows(2).filter(|w| w[0] != w[1]).count() as u64
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k as usize).copied().unwrap_or(0)
}

fn all_tables(n: u32) -> impl Iterator<Item = TruthTable> {
    (0..1u64 << (1u64 << n)).map(move |bits| TruthTable::from_bits(n, bits).unwrap())
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for n in 1..=3 {
        for tt in all_tables(n) {
            let mu = runs(tt.values());
            ensure!(boolfn::mu(&tt) == mu, "mu mismatch on {:?}", tt.values());
            let tree = build_tree(&tt);
            let check = verify_tree(&tree, &tt).map_err(|e| e.to_string())?;
            ensure!(check.correct, "build_tree wrong on {:?}", tt.values());
            let want = ceil_log2(mu);
            ensure!(
                check.depth == want,
                "depth {} != {want} on {:?}",
                check.depth,
                tt.values()
            );
            let oracle = min_depth_oracle(&tt).map_err(|e| e.to_string())?;
            ensure!(
                oracle == want,
                "oracle {oracle} != {want} on {:?}",
                tt.values()
            );
            total += 1;
        }
    }
    Ok(format!("{total} functions, depth = ceil(log2 mu) = oracle"))
}

fn criterion_2() -> Outcome {
    let (mut rows, mut functions) = (0, 0u128);
    for n in 1..=4u32 {
        let size = 1u64 << n;
        let hist = boolfn::enumerate_histogram(n).map_err(|e| e.to_string())?;
        let mut direct = vec![0u128; size as usize + 1];
        let mut at_max_depth = 0u128;
        for bits in 0..1u64 << size {
            let values: Vec<bool> = (0..size).map(|y| bits >> y & 1 == 1).collect();
            let mu = runs(&values);
            direct[mu as usize] += 1;
            functions += 1;
            if ceil_log2(mu) == n {
                at_max_depth += 1;
            }
        }
        for k in 1..=size {
            let expected = 2 * binomial(size - 1, k - 1);
            ensure!(
                direct[k as usize] == expected,
                "n={n} k={k}: direct {} != {expected}",
                direct[k as usize]
            );
            let seen = u128::from(hist.get(&k).copied().unwrap_or(0));
            ensure!(
                seen == expected,
                "n={n} k={k}: histogram {seen} != {expected}"
            );
            let formula = boolfn::count_by_mu(n, k).map_err(|e| e.to_string())?;
            ensure!(
                formula == expected.into(),
                "n={n} k={k}: count_by_mu {formula} != {expected}"
            );
            rows += 1;
        }
        let expected = 1u128 << (size - 1);
        ensure!(
            at_max_depth == expected,
            "n={n}: #D=n is {at_max_depth}, expected {expected}"
        );
        let formula = boolfn::count_max_complexity(n).map_err(|e| e.to_string())?;
        ensure!(
            formula == expected.into(),
            "n={n}: count_max_complexity {formula} != {expected}"
        );
    }
    Ok(format!(
        "{rows} histogram entries and 4 max-depth counts over {functions} functions"
    ))
}

fn assert_exact_partition(region: &CellRegion) -> Result<usize, String> {
    let part = min_partition(region).map_err(|e| e.to_string())?;
    let mut covered = CellRegion::empty(region.rows(), region.cols());
    for r in &part.rects {
        for (x, y) in r.cells() {
            ensure!(
                region.contains(x, y) && !covered.contains(x, y),
                "bad rectangle {r}"
            );
            covered.set(x, y, true);
        }
    }
    ensure!(&covered == region, "partition does not cover the region");
    let oracle = min_partition_oracle_with_cap(region, 36).map_err(|e| e.to_string())?;
    ensure!(
        part.len() == oracle,
        "{} rectangles, oracle {oracle}: {region:?}",
        part.len()
    );
    Ok(oracle)
}

fn criterion_3() -> Outcome {
    let exhaustive: Result<Vec<usize>, String> = (0u32..1 << 16)
        .into_par_iter()
        .map(|mask| {
            let cells = (0..16).map(|i| mask >> i & 1 == 1).collect();
            assert_exact_partition(&CellRegion::new(4, 4, cells).unwrap())
        })
        .collect();
    exhaustive?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut sampled = 0;
    for density in [0.3, 0.5, 0.7, 0.9] {
        for _ in 0..60 {
            assert_exact_partition(&random_region(6, 6, density, &mut rng))?;
            sampled += 1;
        }
    }
    Ok(format!(
        "65536 regions on 4x4 and {sampled} random 6x6 regions match the oracle"
    ))
}

fn oracle_chi(m: &FunctionMatrix) -> Result<usize, String> {
    let mut total = 0;
    for color in [false, true] {
        let region = CellRegion::from_color(m, color);
        total += min_partition_oracle_with_cap(&region, 64).map_err(|e| e.to_string())?;
    }
    Ok(total)
}

fn criterion_4() -> Outcome {
    let chi = |g, n| chi_geom(&generate(g, n).unwrap()).map_err(|e| e.to_string());
    ensure!(chi(Generator::Parity, 1)? == 4, "chi(parity, 1) != 4");
    for n in 1..=3 {
        let got = chi(Generator::Checkerboard, n)?;
        ensure!(got == 1 << (2 * n), "chi(checkerboard, {n}) = {got}");
    }
    let p2 = generate(Generator::Parity, 2).unwrap();
    let (fast, exact) = (chi_geom(&p2).map_err(|e| e.to_string())?, oracle_chi(&p2)?);
    ensure!(fast == exact, "parity n=2: fast {fast} != oracle {exact}");
    ensure!(
        exact == 9,
        "parity n=2: oracle {exact}, block analysis gives 9"
    );
    let flag = if exact == 1 << 4 {
        ""
    } else {
        "; DISCREPANCY: differs from 2^(2n) = 16"
    };
    Ok(format!(
        "parity n=1: 4, checkerboard n<=3: 4/16/64, parity n=2: {exact} (oracle){flag}"
    ))
}

fn named_and_random_matrices(rng: &mut ChaCha8Rng) -> Vec<(String, FunctionMatrix)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for g in Generator::ALL {
            out.push((format!("{} n={n}", g.name()), generate(g, n).unwrap()));
        }
    }
    for i in 0..120 {
        let n = 1 + i % 3;
        let m = if i % 2 == 0 {
            random_matrix(n, rng.random_range(0.2..0.8), rng)
        } else {
            random_block_matrix(n, 1 + i as usize % 5, rng)
        };
        out.push((format!("random #{i} n={n}"), m));
    }
    out
}

fn check_correct(p: &Protocol, m: &FunctionMatrix, what: &str) -> Result<u32, String> {
    let v = verify_protocol(p, m).map_err(|e| e.to_string())?;
    ensure!(v.correct, "{what}: wrong at {:?}", v.witness);
    Ok(v.cost)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let matrices = named_and_random_matrices(&mut rng);
    let mut protocols = 0;
    for (name, m) in &matrices {
        let tiling = chi_geom_tiling(m).map_err(|e| e.to_string())?;
        let chi = tiling.len();
        let lower = ceil_log2(chi as u64);
        let upper = 2 * ceil_log2(2 * chi as u64);
        let compiled = protocol_from_tiling(m, &tiling).map_err(|e| e.to_string())?;
        let cost = check_correct(&compiled, m, name)?;
        ensure!(cost <= upper, "{name}: compiled cost {cost} > {upper}");
        let mut all = vec![compiled, trivial_protocol(m).map_err(|e| e.to_string())?];
        for _ in 0..50 {
            let p = random_correct_protocol(m, 2, &mut rng);
            all.push(perturb_protocol(&p, &mut rng));
        }
        for p in &all {
            let cost = check_correct(p, m, name)?;
            ensure!(
                cost >= lower,
                "{name}: correct protocol of cost {cost} < {lower}"
            );
            protocols += 1;
        }
    }
    Ok(format!(
        "{} matrices, {protocols} correct protocols inside the bounds",
        matrices.len()
    ))
}

fn reachable_sets(p: &Protocol) -> Vec<BTreeSet<(usize, usize)>> {
    let side = 1u32 << p.arity();
    let mut sets = vec![BTreeSet::new(); p.vertex_count()];
    for x in 0..side {
        for y in 0..side {
            for id in p.vertex_path(x, y) {
                sets[id].insert((x as usize, y as usize));
            }
        }
    }
    sets
}

fn rectangles_match(p: &Protocol) -> Result<usize, String> {
    let symbolic = vertex_rectangles(p);
    let exhaustive = reachable_sets(p);
    ensure!(symbolic.len() == exhaustive.len(), "vertex count differs");
    for (id, set) in exhaustive.iter().enumerate() {
        let cells: BTreeSet<(usize, usize)> = symbolic
            .get(id)
            .map(|r| r.cells().collect())
            .unwrap_or_default();
        ensure!(
            &cells == set,
            "vertex {id}: symbolic {:?} vs reachable set of {}",
            symbolic.get(id),
            set.len()
        );
    }
    Ok(exhaustive.len())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut vertices = 0;
    let mut protocols = 0;
    for (_, m) in named_and_random_matrices(&mut rng) {
        let tiling = chi_geom_tiling(&m).map_err(|e| e.to_string())?;
        for p in [
            trivial_protocol(&m).map_err(|e| e.to_string())?,
            protocol_from_tiling(&m, &tiling).map_err(|e| e.to_string())?,
        ] {
            vertices += rectangles_match(&p)?;
            protocols += 1;
        }
    }
    for n in 1..=4 {
        for _ in 0..25 {
            vertices += rectangles_match(&random_protocol(n, 8, &mut rng))?;
            protocols += 1;
        }
    }
    Ok(format!("{protocols} protocols, {vertices} vertices"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut trees = 0;
    for n in 1..=5 {
        let tables: Vec<TruthTable> = if n <= 3 {
            all_tables(n).collect()
        } else {
            (0..300).map(|_| random_table(n, &mut rng)).collect()
        };
        for tt in tables {
            let t = trivial_tree(&tt);
            let v = verify_tree(&t, &tt).map_err(|e| e.to_string())?;
            ensure!(v.correct && v.depth == n, "trivial tree n={n}: {v:?}");
            trees += 1;
        }
    }
    let mut protocols = 0;
    for (name, m) in named_and_random_matrices(&mut rng) {
        let n = m.arity().unwrap();
        let cost = check_correct(&trivial_protocol(&m).map_err(|e| e.to_string())?, &m, &name)?;
        ensure!(cost <= 2 * n + 1, "{name}: trivial cost {cost} > 2n+1");
        ensure!(cost <= 2 * n, "{name}: trivial cost {cost} > 2n");
        protocols += 1;
    }
    Ok(format!(
        "{trees} trivial trees of depth n, {protocols} trivial protocols of cost <= 2n"
    ))
}

/// Rank over GF(p) for a large prime; equals the rational rank unless `p`
/// divides a nonzero minor.
fn rank_mod_p(m: &FunctionMatrix) -> usize {
    const P: u64 = 1_000_000_007;
    let mut a: Vec<Vec<u64>> = (0..m.rows())
        .map(|x| m.row(x).iter().map(|&b| b as u64).collect())
        .collect();
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(pivot) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = pow(a[rank][col], P - 2);
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col] * inv % P;
                for (v, &p) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + P - f * p % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn criterion_8() -> Outcome {
    let (mut growth, mut logs) = (Vec::new(), Vec::new());
    for n in 1..=6u32 {
        let m = generate(Generator::Parity, n).unwrap();
        let r = rank(&m);
        ensure!(
            r == rank_mod_p(&m),
            "parity n={n}: rank {r} disagrees with modular rank"
        );
        let chi = chi_geom(&m).map_err(|e| e.to_string())?;
        let log = ceil_log2(chi as u64);
        if n == 2 || n == 3 {
            ensure!(r == 2, "rank(parity n={n}) = {r}");
            ensure!(
                log >= 2 * n - 2,
                "n={n}: ceil(log2 chi) = {log} < {}",
                2 * n - 2
            );
            if n == 3 {
                let exact = oracle_chi(&m)?;
                ensure!(exact == chi, "parity n=3: fast {chi} != oracle {exact}");
            }
        }
        growth.push(format!("n={n}:chi={chi},log={log}"));
        logs.push(log);
    }
    ensure!(
        logs.windows(2).all(|w| w[1] > w[0]),
        "log2 chi not increasing: {growth:?}"
    );
    Ok(format!("rank 2 at n=2,3; {}", growth.join(" ")))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut docs = Vec::new();
    for i in 0..100 {
        let n = 1 + i % 4;
        let doc = match i % 5 {
            0 => Document::Tree(random_tree(n, 6, &mut rng)),
            1 => Document::Protocol(random_protocol(n, 6, &mut rng)),
            2 => {
                let m = random_matrix(n, 0.5, &mut rng);
                Document::Protocol(random_correct_protocol(&m, 2, &mut rng))
            }
            3 => Document::Table(random_table(n, &mut rng)),
            _ => {
                let m = random_block_matrix(n, 4, &mut rng);
                Document::Tiling(TilingDoc {
                    rows: m.rows(),
                    cols: m.cols(),
                    tiling: chi_geom_tiling(&m).map_err(|e| e.to_string())?,
                })
            }
        };
        docs.push(doc);
    }
    let mut renders = 0;
    for doc in &docs {
        let text = write_document(doc);
        let back = parse_document(&text).map_err(|e| e.to_string())?;
        ensure!(&back == doc, "{} changed across a round trip", doc.kind());
        ensure!(
            write_document(&back) == text,
            "{} re-serialized differently",
            doc.kind()
        );
        if let (Document::Tiling(a), Document::Tiling(b)) = (doc, &back) {
            ensure!(render::ascii(a) == render::ascii(b), "ascii render changed");
            ensure!(render::svg(a) == render::svg(b), "svg render changed");
            ensure!(
                render::svg(a) == render::svg(a),
                "svg render not repeatable"
            );
            renders += 1;
        }
    }
    for args in [
        ["cmpcc", "count", "--n", "3"],
        ["cmpcc", "count", "--n", "4"],
    ] {
        ensure!(
            cmpcc_cli::run(args) == cmpcc_cli::run(args),
            "command output not repeatable"
        );
    }
    Ok(format!(
        "{} artifacts round-trip, {renders} tilings re-render identically",
        docs.len()
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "decision-tree depth equals ceil(log2 mu)",
            limit: Duration::from_secs(10),
            run: criterion_1,
        },
        Criterion {
            id: 2,
            name: "block-count histogram and max-depth count",
            limit: Duration::from_secs(60),
            run: criterion_2,
        },
        Criterion {
            id: 3,
            name: "rectangulation optimality",
            limit: Duration::from_secs(600),
            run: criterion_3,
        },
        Criterion {
            id: 4,
            name: "chi_geom reference values",
            limit: Duration::from_secs(60),
            run: criterion_4,
        },
        Criterion {
            id: 5,
            name: "protocol cost sandwich",
            limit: Duration::from_secs(300),
            run: criterion_5,
        },
        Criterion {
            id: 6,
            name: "vertex rectangles equal reachable sets",
            limit: Duration::MAX,
            run: criterion_6,
        },
        Criterion {
            id: 7,
            name: "trivial tree and protocol bounds",
            limit: Duration::MAX,
            run: criterion_7,
        },
        Criterion {
            id: 8,
            name: "rank two with linear log chi for parity",
            limit: Duration::MAX,
            run: criterion_8,
        },
        Criterion {
            id: 9,
            name: "round trips and deterministic renders",
            limit: Duration::MAX,
            run: criterion_9,
        },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => {
                Err(format!("{detail}; took longer than {:?}", c.limit))
            }
            other => other,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} [{}] {}: {detail} ({:.2}s)",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
