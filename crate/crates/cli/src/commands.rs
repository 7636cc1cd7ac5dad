//! One function per subcommand; each returns a text and a JSON rendering of
//! the same report plus the exit code.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use knot_mosaic::enumerate::{count_knot_mosaics, enumerate_knot_mosaics, enumerate_parallel};
use knot_mosaic::grid::{elementary_move_as_certificate, grid_to_mosaic, mosaic_to_grid, GridDiagram, GridMove};
use knot_mosaic::orbits::{
    cached_orbits, compute_orbits_with, mosaic_number_bounds, same_type_n, OrbitOptions, OrbitPartition, Verdict,
    EXHAUSTIVE_SIDE,
};
use knot_mosaic::search::{find_certificate, MoveCertificate, SearchBudget, SearchOutcome};
use knot_mosaic::zoom::zoom5;
use knot_mosaic::{fingerprint, Catalog, Error, Fingerprint, Mosaic, Result};
use serde_json::{json, Value};

use crate::Command;

pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, code: 0 }
    }

    fn negative(text: String, json: Value) -> Report {
        Report { text, json, code: 1 }
    }
}

pub fn run(command: &Command, jobs: Option<usize>) -> Result<Report> {
    match command {
        Command::Validate { mosaic } => validate(&read_mosaic(mosaic)?),
        Command::Enumerate { n, count_only, o } => enumerate(*n, *count_only, o.as_deref(), jobs),
        Command::Orbits { n, o } => orbits(*n, o.as_deref(), jobs),
        Command::Equiv {
            a,
            b,
            same_side,
            pad,
            depth,
            max_states,
            o,
        } => {
            let (a, b) = (read_mosaic(a)?, read_mosaic(b)?);
            let budget = SearchBudget {
                max_depth: *depth,
                max_pad: *pad,
                max_states: *max_states,
            };
            if *same_side {
                equiv_same_side(&a, &b, budget)
            } else {
                equiv_search(&a, &b, budget, o.as_deref())
            }
        }
        Command::Zoom { mosaic } => {
            let z = zoom5(&read_mosaic(mosaic)?);
            Ok(Report::ok(z.serialize(), mosaic_json(&z)))
        }
        Command::Grid2mosaic { grid } => {
            let m = grid_to_mosaic(&read_grid(grid)?);
            Ok(Report::ok(m.serialize(), mosaic_json(&m)))
        }
        Command::Mosaic2grid { mosaic } => mosaic2grid(&read_mosaic(mosaic)?),
        Command::Gridmove { grid, mv, certify } => gridmove(&read_grid(grid)?, mv, *certify),
        Command::Fingerprint { mosaic } => {
            let f = fingerprint(&read_mosaic(mosaic)?)?;
            Ok(Report::ok(
                format!("components {}\nbracket {}\n", f.component_count, f.bracket),
                fingerprint_json(&f),
            ))
        }
        Command::Render { mosaic } => {
            let m = read_mosaic(mosaic)?;
            Ok(Report::ok(
                m.render_ascii(),
                json!({ "side": m.side(), "render": m.render_ascii() }),
            ))
        }
        Command::MosaicNumber { witnesses, max_n } => mosaic_number(witnesses, *max_n),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_mosaic(path: &Path) -> Result<Mosaic> {
    Mosaic::parse(&read_text(path)?)
}

fn read_grid(path: &Path) -> Result<GridDiagram> {
    GridDiagram::parse(&read_text(path)?)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn mosaic_json(m: &Mosaic) -> Value {
    let rows: Vec<Vec<u8>> = m.rows().map(|r| r.iter().map(|t| t.index()).collect()).collect();
    json!({ "side": m.side(), "rows": rows })
}

fn grid_json(g: &GridDiagram) -> Value {
    let one_based = |v: &[usize]| v.iter().map(|r| r + 1).collect::<Vec<_>>();
    json!({ "size": g.size(), "x": one_based(g.x()), "o": one_based(g.o()) })
}

fn fingerprint_json(f: &Fingerprint) -> Value {
    let terms: Vec<Value> = f.bracket.terms().map(|(e, c)| json!([e, c])).collect();
    json!({ "components": f.component_count, "bracket": f.bracket.to_string(), "terms": terms })
}

fn certificate_json(cert: &MoveCertificate, catalog: &Catalog) -> Value {
    let steps: Vec<String> = cert.steps.iter().map(|&s| catalog.format_step(s)).collect();
    json!({ "pad_source": cert.pad_source, "pad_target": cert.pad_target, "steps": steps })
}

fn validate(m: &Mosaic) -> Result<Report> {
    Ok(match m.first_violation() {
        None => Report::ok(
            format!("valid knot {}-mosaic\n", m.side()),
            json!({ "valid": true, "side": m.side() }),
        ),
        Some(v) => Report::negative(
            format!("invalid: unmatched connection point at {v}\n"),
            json!({ "valid": false, "side": m.side(), "violation": { "row": v.row, "col": v.col, "edge": v.edge.to_string() } }),
        ),
    })
}

fn enumerate(n: usize, count_only: bool, out: Option<&Path>, jobs: Option<usize>) -> Result<Report> {
    if n == 0 {
        return Err(Error::Bounds("n must be positive".into()));
    }
    if count_only {
        let count = match jobs {
            Some(_) => enumerate_parallel(n, jobs).len(),
            None => count_knot_mosaics(n),
        };
        return Ok(Report::ok(
            format!("{count} knot {n}-mosaics\n"),
            json!({ "n": n, "count": count }),
        ));
    }
    let all: Box<dyn Iterator<Item = Mosaic>> = match jobs {
        Some(_) => Box::new(enumerate_parallel(n, jobs).into_iter()),
        None => Box::new(enumerate_knot_mosaics(n)),
    };
    match out {
        Some(path) => {
            let file = fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            let mut count = 0usize;
            for m in all {
                if count > 0 {
                    writeln!(w)?;
                }
                w.write_all(m.serialize().as_bytes())?;
                count += 1;
            }
            w.flush()?;
            Ok(Report::ok(
                format!("{count} knot {n}-mosaics written to {}\n", path.display()),
                json!({ "n": n, "count": count, "path": path.display().to_string() }),
            ))
        }
        None => {
            let records: Vec<Mosaic> = all.collect();
            let text = records.iter().map(|m| m.serialize()).collect::<Vec<_>>().join("\n");
            let rows: Vec<String> = records.iter().map(|m| m.to_row_string()).collect();
            Ok(Report::ok(
                text,
                json!({ "n": n, "count": records.len(), "mosaics": rows }),
            ))
        }
    }
}

fn orbits(n: usize, out: Option<&Path>, jobs: Option<usize>) -> Result<Report> {
    let partition = compute_orbits_with(
        n,
        Catalog::standard(),
        OrbitOptions {
            jobs,
            ..OrbitOptions::default()
        },
    )?;
    let census = partition.census();
    if let Some(path) = out {
        census.write(path)?;
    }
    let classes: Vec<Value> = census
        .classes
        .iter()
        .map(|c| json!({ "id": c.id, "size": c.size, "representative": c.representative.to_row_string() }))
        .collect();
    Ok(Report::ok(
        format!("{} classes\n", census.classes.len()),
        json!({ "n": n, "class_count": census.classes.len(), "members": partition.member_count(), "classes": classes }),
    ))
}

fn equiv_same_side(a: &Mosaic, b: &Mosaic, budget: SearchBudget) -> Result<Report> {
    let verdict = same_type_n(a, b, budget)?;
    let exact = a.side() <= EXHAUSTIVE_SIDE;
    let (text, tag) = match verdict {
        Verdict::Same => ("same class", "same"),
        Verdict::Different => ("distinct classes", "different"),
        Verdict::Unknown => ("undecided within the search budget", "unknown"),
    };
    let json = json!({ "side": a.side(), "verdict": tag, "exhaustive": exact });
    Ok(match verdict {
        Verdict::Same => Report::ok(format!("{text}\n"), json),
        _ => Report::negative(format!("{text}\n"), json),
    })
}

fn equiv_search(a: &Mosaic, b: &Mosaic, budget: SearchBudget, out: Option<&Path>) -> Result<Report> {
    let catalog = Catalog::standard();
    match find_certificate(a, b, budget)? {
        SearchOutcome::Found(cert) => {
            let body = cert.serialize(catalog);
            let summary = format!(
                "equivalent: {} steps (pad {} / {})\n",
                cert.len(),
                cert.pad_source,
                cert.pad_target
            );
            let text = match out {
                Some(path) => {
                    write_text(path, &body)?;
                    format!("{summary}certificate written to {}\n", path.display())
                }
                None => format!("{summary}{body}"),
            };
            let mut json = json!({ "verdict": "equivalent", "certificate": certificate_json(&cert, catalog) });
            if let Some(path) = out {
                json["path"] = json!(path.display().to_string());
            }
            Ok(Report::ok(text, json))
        }
        SearchOutcome::Separated => Ok(Report::negative(
            format!(
                "no certificate: the orbits are disjoint at every padding up to {}\n",
                budget.max_pad
            ),
            json!({ "verdict": "separated", "max_pad": budget.max_pad }),
        )),
        SearchOutcome::Exhausted => Ok(Report::negative(
            "no certificate within the search budget\n".to_string(),
            json!({ "verdict": "exhausted", "max_pad": budget.max_pad, "max_depth": budget.max_depth }),
        )),
    }
}

fn mosaic2grid(m: &Mosaic) -> Result<Report> {
    let g = mosaic_to_grid(m)?;
    if g.is_empty() {
        return Ok(Report::ok(
            "empty grid (blank mosaic)\n".to_string(),
            json!({ "size": 0, "empty": true }),
        ));
    }
    Ok(Report::ok(g.serialize(), grid_json(&g)))
}

fn gridmove(g: &GridDiagram, notation: &str, certify: bool) -> Result<Report> {
    let mv: GridMove = notation.parse()?;
    let moved = g.apply(mv)?;
    let mut text = moved.serialize();
    let mut json = json!({ "move": mv.to_string(), "grid": grid_json(&moved) });
    if certify {
        match elementary_move_as_certificate(g, mv, SearchBudget::default())? {
            SearchOutcome::Found(cert) => {
                let catalog = Catalog::standard();
                text.push_str(&format!(
                    "certificate: {} steps\n{}",
                    cert.len(),
                    cert.serialize(catalog)
                ));
                json["certificate"] = certificate_json(&cert, catalog);
            }
            _ => {
                text.push_str("no certificate within the search budget\n");
                json["certificate"] = Value::Null;
                return Ok(Report::negative(text, json));
            }
        }
    }
    Ok(Report::ok(text, json))
}

fn mosaic_number(paths: &[std::path::PathBuf], max_n: usize) -> Result<Report> {
    if max_n == 0 || max_n > EXHAUSTIVE_SIDE {
        return Err(Error::Capacity(format!(
            "--max-n must be between 1 and {EXHAUSTIVE_SIDE}"
        )));
    }
    let partitions: Vec<&OrbitPartition> = (1..=max_n).map(cached_orbits).collect::<Result<_>>()?;
    let witnesses: Vec<Mosaic> = paths.iter().map(|p| read_mosaic(p)).collect::<Result<_>>()?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (path, w) in paths.iter().zip(&witnesses) {
        let target = fingerprint(w)?;
        let b = mosaic_number_bounds(&target, &partitions, std::slice::from_ref(w))?;
        let upper = b.upper.expect("a witness matches its own fingerprint");
        let exact = (b.lower == upper).then_some(upper);
        text.push_str(&format!("{}: lower {} upper {}", path.display(), b.lower, upper));
        if let Some(m) = exact {
            text.push_str(&format!(" mosaic number {m}"));
        }
        text.push('\n');
        rows.push(json!({
            "witness": path.display().to_string(),
            "crossings": w.crossing_count(),
            "lower": b.lower,
            "upper": upper,
            "mosaic_number": exact,
        }));
    }
    Ok(Report::ok(text, json!({ "max_n": max_n, "results": rows })))
}
