//! Acceptance criteria 1 to 12. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use knot_mosaic::enumerate::{brute_force_count, count_knot_mosaics, enumerate_column_major, enumerate_knot_mosaics};
use knot_mosaic::grid::{
    grid_to_mosaic, mosaic_to_grid, Axis, CommutationRule, Corner, Decoration, GridDiagram, GridMove,
};
use knot_mosaic::invariants::{fingerprint_from_pd, forgetful};
use knot_mosaic::orbits::{cached_orbits, mosaic_number_bounds, OrbitPartition};
use knot_mosaic::search::{find_certificate, replay, SearchBudget, SearchOutcome};
use knot_mosaic::zoom::{centered_block, zoom5, zoom_block};
use knot_mosaic::{fingerprint, Catalog, Error, Fingerprint, Mosaic, MoveApplication, Tile};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn fixture(name: &str) -> Mosaic {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    Mosaic::parse(&std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn partitions() -> Vec<&'static OrbitPartition> {
    (1..=4).map(|n| cached_orbits(n).unwrap()).collect()
}

fn class_prints(p: &OrbitPartition) -> Vec<Fingerprint> {
    p.classes()
        .iter()
        .map(|c| fingerprint(&c.representative).unwrap())
        .collect()
}

fn census_counts() -> Outcome {
    let start = Instant::now();
    let counts: Vec<usize> = (1..=4).map(|n| cached_orbits(n).unwrap().class_count()).collect();
    let elapsed = start.elapsed();
    check(
        counts == [1, 2, 4, 12] && elapsed < Duration::from_secs(60),
        format!("class counts {counts:?}, expected [1, 2, 4, 12], in {elapsed:.2?}"),
    )
}

fn representative_coverage() -> Outcome {
    let listed = [(1, 1), (2, 2), (3, 4), (4, 12)];
    let mut problems = Vec::new();
    for (n, count) in listed {
        let p = cached_orbits(n).unwrap();
        let mut hit = BTreeSet::new();
        for k in 1..=count {
            let m = fixture(&format!("census/n{n}_{k:02}.mosaic"));
            if let Some(v) = m.first_violation() {
                problems.push(format!("n{n}_{k:02} invalid at {v}"));
                continue;
            }
            let c = p.class_of(&m).unwrap();
            if !hit.insert(c) {
                problems.push(format!("n{n}_{k:02} repeats class {c}"));
            }
        }
        if hit.len() != p.class_count() {
            let missed: Vec<String> = (0..p.class_count())
                .filter(|c| !hit.contains(c))
                .map(|c| p.classes()[c].representative.to_row_string())
                .collect();
            problems.push(format!(
                "n={n}: {} listed classes of {}, missing {missed:?}",
                hit.len(),
                p.class_count()
            ));
        }
    }
    check(
        problems.is_empty(),
        if problems.is_empty() {
            "19 listed mosaics in distinct classes covering every census".into()
        } else {
            problems.join("; ")
        },
    )
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let (k1, k2) = (fixture("worked/k1.mosaic"), fixture("worked/k2.mosaic"));
    let distinct = !cached_orbits(3).unwrap().same_type(&k1, &k2).unwrap();
    let budget = SearchBudget {
        max_pad: 1,
        max_depth: 8,
        ..SearchBudget::default()
    };
    let SearchOutcome::Found(cert) = find_certificate(&k1, &k2, budget).unwrap() else {
        return Err("no certificate with pad 1, depth 8".into());
    };
    let end = replay(&cert, &k1).unwrap();
    let elapsed = start.elapsed();
    check(
        distinct
            && cert.pad_source == 1
            && cert.pad_target == 1
            && cert.len() <= 8
            && end == k2.inject()
            && elapsed < Duration::from_secs(5),
        format!(
            "distinct at n=3: {distinct}; certificate of {} steps at pad {}/{}, replayed in {elapsed:.2?}",
            cert.len(),
            cert.pad_source,
            cert.pad_target
        ),
    )
}

fn zoom_golden() -> Outcome {
    let exact = zoom5(&fixture("zoom/input.mosaic")) == fixture("zoom/output.mosaic");
    let mut bad = 0;
    let mut total = 0;
    for k in enumerate_knot_mosaics(3) {
        let z = zoom5(&k);
        let tiles_ok = z.cells().iter().all(|t| !matches!(t.index(), 7..=9));
        let pd_ok = forgetful(&k).unwrap().same_diagram(&forgetful(&z).unwrap());
        total += 1;
        bad += usize::from(!(tiles_ok && pd_ok));
    }
    check(
        exact && bad == 0,
        format!(
            "20x20 golden {}; {} of {total} zoomed 3-mosaics keep tiles and PD codes",
            if exact { "matches" } else { "differs" },
            total - bad
        ),
    )
}

fn tile_certificates() -> Outcome {
    let start = Instant::now();
    let budget = SearchBudget {
        max_depth: 12,
        ..SearchBudget::default()
    };
    let mut parts = Vec::new();
    let mut all = true;
    for t in [7, 8, 9] {
        let t = Tile::new(t).unwrap();
        let (from, to) = (zoom_block(t), centered_block(t));
        match find_certificate(from, &to, budget).unwrap() {
            SearchOutcome::Found(c) if replay(&c, from).unwrap() == to => parts.push(format!("{t}: {} steps", c.len())),
            other => {
                all = false;
                parts.push(format!(
                    "{t}: {}",
                    match other {
                        SearchOutcome::Separated => "orbit closed, no certificate exists",
                        SearchOutcome::Exhausted => "budget exhausted",
                        SearchOutcome::Found(_) => "certificate failed replay",
                    }
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        all && elapsed < Duration::from_secs(30),
        format!("{} in {elapsed:.2?}", parts.join(", ")),
    )
}

fn random_grid(rng: &mut StdRng, n: usize) -> GridDiagram {
    loop {
        let mut x: Vec<usize> = (0..n).collect();
        let mut o: Vec<usize> = (0..n).collect();
        x.shuffle(rng);
        o.shuffle(rng);
        if let Ok(g) = GridDiagram::new(x, o) {
            return g;
        }
    }
}

// Span of the segment in column or row `k`, found by scanning decorations.
fn span(g: &GridDiagram, axis: Axis, k: usize) -> (usize, usize) {
    let ends: Vec<usize> = match axis {
        Axis::Columns => vec![g.x()[k], g.o()[k]],
        Axis::Rows => (0..g.size()).filter(|&c| g.x()[c] == k || g.o()[c] == k).collect(),
    };
    (*ends.iter().min().unwrap(), *ends.iter().max().unwrap())
}

fn grid_soundness() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2024);
    let (mut trials, mut applied, mut rejected) = (0, 0, 0);
    let mut failures = Vec::new();
    while trials < 1500 {
        let n = rng.gen_range(2..=8);
        let g = random_grid(&mut rng, n);
        let axis = if rng.gen() { Axis::Columns } else { Axis::Rows };
        let mv = match rng.gen_range(0..4) {
            0 => GridMove::Cyclic {
                axis,
                forward: rng.gen(),
            },
            1 => GridMove::Commute {
                axis,
                index: rng.gen_range(0..n - 1),
                rule: CommutationRule::Separated,
            },
            2 => GridMove::Stabilize {
                column: rng.gen_range(0..n),
                kind: if rng.gen() { Decoration::X } else { Decoration::O },
                empty: Corner::ALL[rng.gen_range(0..4)],
            },
            _ => match g.destabilization_sites().choose(&mut rng) {
                Some(&(column, row)) => GridMove::Destabilize { column, row },
                None => continue,
            },
        };
        trials += 1;
        let separated = match mv {
            GridMove::Commute { axis, index, .. } => {
                let ((a0, a1), (b0, b1)) = (span(&g, axis, index), span(&g, axis, index + 1));
                Some(a1 < b0 || b1 < a0)
            }
            _ => None,
        };
        match (g.apply(mv), separated) {
            (Ok(_), Some(false)) => failures.push(format!("interleaved commutation accepted: {mv} on {g:?}")),
            (Ok(h), _) => {
                applied += 1;
                let (a, b) = (
                    fingerprint(&grid_to_mosaic(&g)).unwrap(),
                    fingerprint(&grid_to_mosaic(&h)).unwrap(),
                );
                if a != b {
                    failures.push(format!("{mv} changed the fingerprint of {g:?}"));
                }
            }
            (Err(Error::NotApplicable(_)), Some(false)) => rejected += 1,
            (Err(e), _) => failures.push(format!("{mv} on {g:?}: {e}")),
        }
    }
    check(
        failures.is_empty() && rejected > 0,
        if failures.is_empty() {
            format!("{trials} trials, {applied} applied with equal fingerprints, {rejected} interleaved commutations rejected")
        } else {
            format!("{} failures, first: {}", failures.len(), failures[0])
        },
    )
}

fn figure_certificates() -> Outcome {
    let chains: [&[&str]; 6] = [
        &["commutation_a", "commutation_b", "commutation_c"],
        &["crossing_slide_a", "crossing_slide_b"],
        &["stabilization_1a", "stabilization_1b", "stabilization_1c"],
        &["stabilization_2a", "stabilization_2b"],
        &["stabilization_3a", "stabilization_3b"],
        &["stabilization_4a", "stabilization_4b"],
    ];
    let budget = SearchBudget {
        max_depth: 6,
        ..SearchBudget::default()
    };
    let mut lengths = Vec::new();
    let mut missing = Vec::new();
    for chain in chains {
        for w in chain.windows(2) {
            let a = fixture(&format!("grid_moves/{}.mosaic", w[0]));
            let b = fixture(&format!("grid_moves/{}.mosaic", w[1]));
            match find_certificate(&a, &b, budget).unwrap() {
                SearchOutcome::Found(c) if replay(&c, &a).unwrap() == b.inject_times(c.pad_target) => {
                    lengths.push(c.len())
                }
                _ => missing.push(format!("{} -> {}", w[0], w[1])),
            }
        }
    }
    check(
        missing.is_empty(),
        if missing.is_empty() {
            format!("{} figure steps certified, lengths {lengths:?}", lengths.len())
        } else {
            format!("not certified: {}", missing.join(", "))
        },
    )
}

fn mosaic_numbers() -> Outcome {
    let parts = partitions();
    let n4: HashSet<Fingerprint> = class_prints(parts[3]).into_iter().collect();
    let labels = ["4_1", "5_1", "5_2", "6_2", "7_4"];
    let witnesses: Vec<Mosaic> = labels
        .iter()
        .map(|l| fixture(&format!("witnesses/{l}.mosaic")))
        .collect();
    let mut problems = Vec::new();
    let mut prints = Vec::new();
    for (l, w) in labels.iter().zip(&witnesses) {
        let f = fingerprint(w).unwrap();
        // the state sum over the PD code is an independent route to the same value
        if fingerprint_from_pd(&forgetful(w).unwrap()).unwrap() != f {
            problems.push(format!("{l}: bracket routes disagree"));
        }
        if w.side() != 5 || !w.is_suitably_connected() {
            problems.push(format!("{l}: not a knot 5-mosaic"));
        }
        if n4.contains(&f) {
            problems.push(format!("{l}: fingerprint occurs at n=4"));
        }
        let b = mosaic_number_bounds(&f, &parts, &witnesses).unwrap();
        if (b.lower, b.upper) != (5, Some(5)) {
            problems.push(format!("{l}: bounds {}..{:?}", b.lower, b.upper));
        }
        prints.push(f);
    }
    let distinct: HashSet<&Fingerprint> = prints.iter().collect();
    if distinct.len() != prints.len() {
        problems.push("witness fingerprints repeat".into());
    }
    let unknot = Mosaic::parse_row_string("2 1;3 4").unwrap();
    let trefoil = fixture("trefoil.mosaic");
    for (name, m, want) in [("unknot", &unknot, 2), ("trefoil", &trefoil, 4)] {
        let b = mosaic_number_bounds(&fingerprint(m).unwrap(), &parts, std::slice::from_ref(m)).unwrap();
        if (b.lower, b.upper) != (want, Some(want)) {
            problems.push(format!("{name}: bounds {}..{:?}", b.lower, b.upper));
        }
    }
    check(
        problems.is_empty(),
        if problems.is_empty() {
            "m = 5 for 4_1 5_1 5_2 6_2 7_4, m(unknot) = 2, m(trefoil) = 4".into()
        } else {
            problems.join("; ")
        },
    )
}

fn enumerator_certification() -> Outcome {
    let mut problems = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=2 {
        let (fast, brute) = (count_knot_mosaics(n), brute_force_count(n).unwrap());
        if fast != brute {
            problems.push(format!("n={n}: {fast} vs brute force {brute}"));
        }
    }
    for n in 1..=4 {
        let rows: Vec<Mosaic> = enumerate_knot_mosaics(n).collect();
        let mut cols = enumerate_column_major(n);
        cols.sort_by_key(|m| m.encode());
        let mut sorted = rows.clone();
        sorted.sort_by_key(|m| m.encode());
        if sorted != cols {
            problems.push(format!(
                "n={n}: row-major {} vs column-major {}",
                rows.len(),
                cols.len()
            ));
        }
        counts.push(rows.len());
    }
    check(
        problems.is_empty(),
        if problems.is_empty() {
            format!("counts {counts:?} agree across all routes")
        } else {
            problems.join("; ")
        },
    )
}

fn move_engine() -> Outcome {
    let catalog = Catalog::standard();
    let mut problems = Vec::new();
    for (idx, p) in catalog.patterns().iter().enumerate() {
        let app = MoveApplication {
            pattern: idx,
            i: 0,
            j: 0,
        };
        let there = catalog.apply(&p.side_a, app).unwrap();
        if there != p.side_b || catalog.apply(&there, app).unwrap() != p.side_a {
            problems.push(format!("{} is not an involution", p.label));
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    let mut starts: Vec<Mosaic> = cached_orbits(4).unwrap().members().collect();
    starts.extend(
        ["4_1", "5_2", "7_4", "6_3"]
            .iter()
            .map(|l| fixture(&format!("witnesses/{l}.mosaic"))),
    );
    let mut applications = 0;
    while applications < 10_000 && problems.len() < 5 {
        let mut m = starts.choose(&mut rng).unwrap().clone();
        let f = fingerprint(&m).unwrap();
        for _ in 0..20 {
            let moves = catalog.applicable_moves(&m);
            let Some(&app) = moves.choose(&mut rng) else { break };
            let next = catalog.apply(&m, app).unwrap();
            applications += 1;
            if !next.is_suitably_connected()
                || fingerprint(&next).unwrap() != f
                || catalog.apply(&next, app).unwrap() != m
            {
                problems.push(format!(
                    "{} at ({}, {}) on {}",
                    catalog.format_step(app),
                    app.i,
                    app.j,
                    m.to_row_string()
                ));
            }
            m = next;
        }
    }
    check(
        problems.is_empty(),
        if problems.is_empty() {
            format!(
                "{} patterns are involutions; {applications} random applications sound",
                catalog.len()
            )
        } else {
            problems.join("; ")
        },
    )
}

fn grids(n: usize) -> Vec<GridDiagram> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        perms(n - 1)
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |k| {
                    let mut q = p.clone();
                    q.insert(k, n - 1);
                    q
                })
            })
            .collect()
    }
    let all = perms(n);
    all.iter()
        .flat_map(|x| all.iter().filter_map(|o| GridDiagram::new(x.clone(), o.clone()).ok()))
        .collect()
}

fn round_trip() -> Outcome {
    let (mut total, mut exact) = (0, 0);
    let mut first = None;
    for n in 1..=4 {
        for g in grids(n) {
            total += 1;
            let back = mosaic_to_grid(&grid_to_mosaic(&g)).unwrap();
            if back == g {
                exact += 1;
            } else if first.is_none() {
                first = Some(format!(
                    "{} came back as {}",
                    g.serialize().trim_end().replace('\n', " "),
                    back.serialize().trim_end().replace('\n', " ")
                ));
            }
        }
    }
    check(
        exact == total,
        format!(
            "{exact} of {total} grids recovered exactly{}",
            first.map(|f| format!("; e.g. {f}")).unwrap_or_default()
        ),
    )
}

fn six_three() -> Outcome {
    let w = fixture("witnesses/6_3.mosaic");
    let f = fingerprint(&w).unwrap();
    let oracle = fingerprint_from_pd(&forgetful(&w).unwrap()).unwrap();
    let seen = partitions().into_iter().flat_map(class_prints).any(|p| p == f);
    check(
        w.side() == 6 && w.is_suitably_connected() && w.crossing_count() == 6 && oracle == f && !seen,
        format!(
            "6-mosaic valid: {}, {} crossings, fingerprint {} at n <= 4",
            w.is_suitably_connected(),
            w.crossing_count(),
            if seen { "present" } else { "absent" }
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("census reproduction", census_counts),
        ("representative coverage", representative_coverage),
        ("worked padding example", worked_example),
        ("zoom golden", zoom_golden),
        ("zoom tile certificates", tile_certificates),
        ("grid-move soundness", grid_soundness),
        ("grid-move figures", figure_certificates),
        ("mosaic numbers", mosaic_numbers),
        ("enumerator certification", enumerator_certification),
        ("move-engine properties", move_engine),
        ("grid round trip", round_trip),
        ("6_3 witness", six_three),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", k + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
