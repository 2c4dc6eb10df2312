//! Acceptance suite: twelve criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always appear in
//! `cargo test` output; the process fails if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use hyperchrom::campaign::{
    all_graphs, exhaustive_instances, family_instance, random_suite, renumber, run_instance,
    run_sweep, seeded_instances, CheckName, Instance, InstanceReport, Status, SweepConfig,
};
use hyperchrom::generate::{t_subsets, Family};
use hyperchrom::matroid::{is_hypercircuit, is_partition_connected};
use hyperchrom::{Caps, Hypergraph, VertexSet};

const SUITE_SEED: u64 = 0x5eed_2024;
const SUITE_SIZE: usize = 200;

#[derive(Default)]
struct Tally {
    counts: BTreeMap<&'static str, usize>,
    failures: Vec<String>,
}

impl Tally {
    fn add(&mut self, report: &InstanceReport, check: CheckName) {
        let Some(record) = report.checks.iter().find(|c| c.check == check) else {
            self.failures.push(format!("{}: {check} missing", report.family));
            return;
        };
        *self.counts.entry(record.status.as_str()).or_default() += 1;
        if matches!(record.status, Status::Fail | Status::SkippedCap) {
            self.failures.push(format!(
                "{} [{}]: {check} {}: {}",
                report.family,
                report.instance_id,
                record.status.as_str(),
                record.detail
            ));
        }
    }

    fn add_all<'a>(&mut self, reports: impl IntoIterator<Item = &'a InstanceReport>, check: CheckName) {
        for r in reports {
            self.add(r, check);
        }
    }

    fn fail(&mut self, message: String) {
        self.failures.push(message);
    }

    fn passed(&self) -> usize {
        self.counts.get("pass").copied().unwrap_or(0)
    }

    fn summary(&self) -> String {
        let parts: Vec<String> = self.counts.iter().map(|(k, v)| format!("{v} {k}")).collect();
        parts.join(", ")
    }
}

struct Outcome {
    number: usize,
    title: &'static str,
    ok: bool,
    note: String,
    seconds: f64,
    failures: Vec<String>,
}

fn finish(number: usize, title: &'static str, started: Instant, tally: Tally, extra: &str) -> Outcome {
    let ok = tally.failures.is_empty() && tally.passed() > 0;
    let mut note = tally.summary();
    if !extra.is_empty() {
        note = format!("{note}; {extra}");
    }
    Outcome {
        number,
        title,
        ok,
        note,
        seconds: started.elapsed().as_secs_f64(),
        failures: tally.failures,
    }
}

fn sweep(instances: &[Instance], checks: &[CheckName]) -> Vec<InstanceReport> {
    let config = SweepConfig {
        checks: checks.to_vec(),
        workers: 1,
        ..SweepConfig::default()
    };
    run_sweep(instances, &config).expect("sweep runs").instances
}

/// All `k`-subsets of `pool`, in lexicographic order of indices.
fn combinations(pool: &[VertexSet], k: usize, mut visit: impl FnMut(&[VertexSet])) {
    fn rec(pool: &[VertexSet], k: usize, start: usize, acc: &mut Vec<VertexSet>, visit: &mut dyn FnMut(&[VertexSet])) {
        if acc.len() == k {
            visit(acc);
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - acc.len() {
                break;
            }
            acc.push(pool[i]);
            rec(pool, k, i + 1, acc, visit);
            acc.pop();
        }
    }
    rec(pool, k, 0, &mut Vec::with_capacity(k), &mut visit);
}

/// Every possible edge (vertex set of size at least 2) on `n` vertices.
fn all_edge_sets(n: usize) -> Vec<VertexSet> {
    (2..=n).flat_map(|t| t_subsets(n, t)).collect()
}

fn from_masks(n: usize, masks: &[VertexSet]) -> Hypergraph {
    let edges = masks
        .iter()
        .map(|&m| (0..n).filter(|v| m >> v & 1 == 1).collect())
        .collect();
    Hypergraph::new(n, edges).expect("distinct edges")
}

struct Suites {
    exhaustive_3_5: Vec<InstanceReport>,
    graphs_5: Vec<InstanceReport>,
    random: Vec<InstanceReport>,
}

impl Suites {
    fn all(&self) -> impl Iterator<Item = &InstanceReport> {
        self.exhaustive_3_5.iter().chain(&self.graphs_5).chain(&self.random)
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let every_check = CheckName::ALL.to_vec();
    let suites = Suites {
        exhaustive_3_5: sweep(&exhaustive_instances(5, 3).unwrap(), &every_check),
        graphs_5: sweep(&all_graphs(5).unwrap(), &every_check),
        random: sweep(&random_suite(SUITE_SIZE, SUITE_SEED).unwrap(), &every_check),
    };
    let setup = started.elapsed().as_secs_f64();
    let mut outcomes = Vec::new();

    // 1. Subset-sum polynomial equals brute-force colouring counts for q = 0..6.
    let t = Instant::now();
    let mut tally = Tally::default();
    tally.add_all(suites.exhaustive_3_5.iter().chain(&suites.random), CheckName::Oracle);
    if suites.exhaustive_3_5.len() != 1024 {
        tally.fail(format!("exhaustive family has {} members", suites.exhaustive_3_5.len()));
    }
    outcomes.push(finish(1, "oracle equivalence", t, tally, ""));

    // 2. Exponential identity on random instances with n <= 6.
    let t = Instant::now();
    let mut tally = Tally::default();
    tally.add_all(suites.random.iter().filter(|r| r.n <= 6), CheckName::ExpoIdentity);
    outcomes.push(finish(2, "exponential identity", t, tally, "x, y in 0..=3"));

    // 3. |a1| <= N(H).
    let t = Instant::now();
    let mut tally = Tally::default();
    tally.add_all(suites.exhaustive_3_5.iter().chain(&suites.graphs_5), CheckName::Penrose);
    outcomes.push(finish(3, "penrose-type inequality", t, tally, ""));

    // 4-6 on every hypergraph with n <= 5 and |E| <= 6, edges of any size.
    let t = Instant::now();
    let mut rank_tally = Tally::default();
    let mut forest_tally = Tally::default();
    let mut pc_tally = Tally::default();
    let mut circuits = 0usize;
    let small_checks = SweepConfig {
        checks: vec![
            CheckName::RankConsistency,
            CheckName::HyperforestBound,
            CheckName::PartitionConnectivity,
        ],
        ..SweepConfig::default()
    };
    let mut enumerated = 0usize;
    for n in 1..=5 {
        let pool = all_edge_sets(n);
        for k in 0..=6.min(pool.len()) {
            combinations(&pool, k, |masks| {
                let h = from_masks(n, masks);
                let inst = Instance {
                    id: enumerated,
                    family: format!("all n={n} |E|={k}"),
                    seed: None,
                    hypergraph: h,
                };
                enumerated += 1;
                let report = run_instance(&inst, &small_checks);
                rank_tally.add(&report, CheckName::RankConsistency);
                forest_tally.add(&report, CheckName::HyperforestBound);
                pc_tally.add(&report, CheckName::PartitionConnectivity);
                if k == n && is_hypercircuit(&inst.hypergraph) {
                    circuits += 1;
                    if !is_partition_connected(&inst.hypergraph, &Caps::default()).unwrap() {
                        pc_tally.fail(format!("hypercircuit {:?} not partition connected", inst.hypergraph.edges()));
                    }
                }
            });
        }
    }
    let enumeration_seconds = t.elapsed().as_secs_f64();
    outcomes.push(finish(
        4,
        "matroid rank consistency",
        t,
        rank_tally,
        &format!("{enumerated} hypergraphs with n <= 5, |E| <= 6"),
    ));

    // 5. Hyperforest size and rank caps, on the enumeration above and the suites.
    let t = Instant::now();
    forest_tally.add_all(suites.all(), CheckName::HyperforestBound);
    let mut done = finish(5, "hyperforest size bound", t, forest_tally, "");
    done.seconds += enumeration_seconds;
    outcomes.push(done);

    // 6. Partition connectivity <=> full rank; hypercircuits on <= 6 vertices.
    let t = Instant::now();
    pc_tally.add_all(suites.all(), CheckName::PartitionConnectivity);
    for tt in 2..=4 {
        combinations(&t_subsets(6, tt), 6, |masks| {
            let h = from_masks(6, masks);
            if is_hypercircuit(&h) {
                circuits += 1;
                if !is_partition_connected(&h, &Caps::default()).unwrap() {
                    pc_tally.fail(format!("hypercircuit {:?} not partition connected", h.edges()));
                }
            }
        });
    }
    let mut done = finish(
        6,
        "partition-connectivity equivalences",
        t,
        pc_tally,
        &format!("{circuits} whole hypercircuits checked"),
    );
    done.seconds += enumeration_seconds;
    outcomes.push(done);

    // 7. Unique f-maximizer equal to the partition-connected decomposition.
    let t = Instant::now();
    let mut tally = Tally::default();
    tally.add_all(suites.all(), CheckName::BadPartition);
    let not_pc = suites
        .all()
        .filter(|r| r.checks.iter().any(|c| c.check == CheckName::BadPartition && c.detail.starts_with("maximal bad partition")))
        .count();
    outcomes.push(finish(7, "maximal bad partition", t, tally, &format!("{not_pc} not partition connected")));

    // 8. Structure theorem and Euler inequality on 50 seeded instances.
    let t = Instant::now();
    let mut tally = Tally::default();
    let mut picked: Vec<Instance> = seeded_instances(&Family::RandomInstance { seed: 0 }, 2000, SUITE_SEED ^ 0x8)
        .unwrap()
        .into_iter()
        .filter(|i| i.hypergraph.num_vertices() <= 6 && i.hypergraph.num_edges() <= 8)
        .take(50)
        .collect();
    renumber(&mut picked);
    if picked.len() != 50 {
        tally.fail(format!("only {} eligible instances", picked.len()));
    }
    let reports = sweep(&picked, &[CheckName::StructureTheorem, CheckName::EulerInequality]);
    tally.add_all(&reports, CheckName::StructureTheorem);
    tally.add_all(&reports, CheckName::EulerInequality);
    tally.add_all(suites.all(), CheckName::StructureTheorem);
    outcomes.push(finish(8, "structure theorem and euler inequality", t, tally, ""));

    // 9. Bounded exponential type, all v and s <= 6.
    let t = Instant::now();
    let mut tally = Tally::default();
    tally.add_all(suites.all(), CheckName::BoundedExpo);
    outcomes.push(finish(9, "bounded exponential type", t, tally, ""));

    // 10. Spanning-tree sums on graphs with at most 7 vertices.
    let t = Instant::now();
    let mut tally = Tally::default();
    let mut graphs: Vec<Instance> = Vec::new();
    for n in [6, 7] {
        graphs.extend(
            seeded_instances(&Family::RandomUniform { n, t: 2, p: 0.4, seed: 0 }, 40, SUITE_SEED ^ n as u64).unwrap(),
        );
    }
    renumber(&mut graphs);
    let reports = sweep(&graphs, &[CheckName::Sokal]);
    tally.add_all(
        suites.graphs_5.iter().chain(suites.random.iter().filter(|r| r.t == Some(2))).chain(&reports),
        CheckName::Sokal,
    );
    outcomes.push(finish(10, "spanning-tree sum bound", t, tally, "D = 0 graphs on n >= 2 are outside the bound"));

    // 11. Root moduli within 7.04 etD <= 8 etD, residuals <= 1e-8.
    let t = Instant::now();
    let mut tally = Tally::default();
    let mut families: Vec<Instance> = Vec::new();
    for n in 3..=7 {
        families.push(family_instance(&Family::CompleteUniform { n, t: 3 }).unwrap());
    }
    for (tt, lo) in [(2, 3), (3, 4), (4, 5)] {
        for n in lo..=12 {
            families.push(family_instance(&Family::TightCycle { n, t: tt }).unwrap());
        }
    }
    for k in 1..=4 {
        families.push(family_instance(&Family::LoosePath { k, t: 3 }).unwrap());
    }
    renumber(&mut families);
    let reports = sweep(&families, &[CheckName::RootBounds]);
    tally.add_all(suites.all().chain(&reports), CheckName::RootBounds);
    let worst = reports
        .iter()
        .chain(suites.all())
        .filter_map(|r| Some(r.max_root_modulus? / r.bound_cr?))
        .filter(|x| x.is_finite())
        .fold(0.0f64, f64::max);
    outcomes.push(finish(
        11,
        "root bounds",
        t,
        tally,
        &format!("largest |z| / (7.04 etD) = {worst:.4}"),
    ));

    // 12. Same seed, 1 and 8 workers, byte-identical reports.
    let t = Instant::now();
    let mut tally = Tally::default();
    let instances = random_suite(60, SUITE_SEED ^ 0xc).unwrap();
    let run = |workers| {
        let config = SweepConfig {
            workers,
            ..SweepConfig::default()
        };
        run_sweep(&instances, &config).unwrap()
    };
    let (one, eight) = (run(1), run(8));
    if one.to_json() != eight.to_json() || one.to_csv() != eight.to_csv() {
        tally.fail("reports differ between 1 and 8 workers".into());
    } else {
        *tally.counts.entry("pass").or_default() += 1;
    }
    let again = random_suite(60, SUITE_SEED ^ 0xc).unwrap();
    if again != instances {
        tally.fail("seeded generation is not reproducible".into());
    }
    outcomes.push(finish(12, "determinism across worker counts", t, tally, "json and csv compared"));

    println!();
    println!("shared suites built in {setup:.1}s");
    let mut all_ok = true;
    for o in &outcomes {
        all_ok &= o.ok;
        println!(
            "criterion {:>2}  {:<40} {}  ({:.1}s; {})",
            o.number,
            o.title,
            if o.ok { "PASS" } else { "FAIL" },
            o.seconds,
            o.note
        );
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        outcomes.iter().filter(|o| o.ok).count(),
        outcomes.len(),
        started.elapsed().as_secs_f64()
    );
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

