//! Command implementations. Every command returns a process exit code:
//! 0 success (all checks passed where applicable), 1 semantic mismatch or
//! failed verification, 2 usage, parse, build, or budget errors.

use std::path::{Path, PathBuf};

use gcob::error::Error;
use gcob::formulas;
use gcob::group::FiniteGroup;
use gcob::monoid::{self, DEFAULT_PROBE_BUDGET};
use gcob::spec::group_from_spec;
use gcob::subgroups;
use gcob::cylinder;

use crate::expected::{ExpectedRow, EXPECTED};
use crate::report::{render_rows, render_values, CensusRow, Format};

pub struct GlobalOpts {
    pub format: Format,
    pub max_genus: usize,
    pub budget: u64,
}

fn error_exit_code(err: &Error) -> i32 {
    match err {
        Error::FreenessViolation(_) => 1,
        _ => 2,
    }
}

fn fail(err: &Error, context: &str) -> i32 {
    eprintln!("error: {context}: {err}");
    error_exit_code(err)
}

/// Census quantities for one group. The genus scan is capped at 2 here;
/// higher genus reporting lives in `rank`.
fn census_row(group: &FiniteGroup, name: &str, opts: &GlobalOpts) -> Result<CensusRow, Error> {
    let subs = subgroups::all_subgroups(group)?;
    let abelian = subs.iter().filter(|s| s.is_abelian).count() as u64;
    let genus = opts.max_genus.clamp(1, 2);
    let report = monoid::rank(group, genus, opts.budget, DEFAULT_PROBE_BUDGET)?;
    Ok(CensusRow {
        name: name.to_string(),
        order: group.order() as u64,
        subgroups: subs.len() as u64,
        abelian_subgroups: abelian,
        r1: report.per_genus[0],
        r2: report.per_genus.get(1).copied(),
        truncated: report.truncated,
        flags: Vec::new(),
    })
}

pub fn cmd_census(opts: &GlobalOpts, specs: &[String]) -> i32 {
    let mut rows = Vec::new();
    for spec in specs {
        let group = match group_from_spec(spec) {
            Ok(g) => g,
            Err(e) => return fail(&e, &format!("spec {spec:?}")),
        };
        match census_row(&group, group.name(), opts) {
            Ok(row) => rows.push(row),
            Err(e) => return fail(&e, &format!("spec {spec:?}")),
        }
    }
    rows.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.name.cmp(&b.name)));
    print!("{}", render_rows(&rows, opts.format));
    0
}

pub fn cmd_table(opts: &GlobalOpts, max_order: u64, imports: &[(String, PathBuf)]) -> i32 {
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for row in EXPECTED.iter().filter(|r| r.order <= max_order) {
        let group = match build_for_row(row, imports) {
            Ok(Some(g)) => g,
            Ok(None) => {
                rows.push(CensusRow {
                    name: row.name.to_string(),
                    order: row.order,
                    subgroups: row.subgroups,
                    abelian_subgroups: row.abelian_subgroups,
                    r1: row.r1,
                    r2: row.r2,
                    truncated: row.continued,
                    flags: vec!["SKIPPED".into()],
                });
                continue;
            }
            Err(e) => return fail(&e, &format!("table row {}", row.name)),
        };
        let subs = match subgroups::all_subgroups(&group) {
            Ok(s) => s,
            Err(e) => return fail(&e, &format!("table row {}", row.name)),
        };
        let abelian = subs.iter().filter(|s| s.is_abelian).count() as u64;
        let genus = opts.max_genus.clamp(1, 2);
        let analysis = match monoid::analyze(&group, genus, opts.budget) {
            Ok(a) => a,
            Err(e @ Error::FreenessViolation(_)) => {
                mismatches.push(format!("{}: {e}", row.name));
                continue;
            }
            Err(e) => return fail(&e, &format!("table row {}", row.name)),
        };
        let r1 = analysis.r[0];
        let r2 = analysis.r.get(1).copied();
        let mut diffs = Vec::new();
        if subs.len() as u64 != row.subgroups {
            diffs.push(format!("subgroups {} expected {}", subs.len(), row.subgroups));
        }
        if abelian != row.abelian_subgroups {
            diffs.push(format!(
                "abelian subgroups {abelian} expected {}",
                row.abelian_subgroups
            ));
        }
        if r1 != row.r1 {
            diffs.push(format!("r1 {r1} expected {}", row.r1));
        }
        if let (Some(got), Some(want)) = (r2, row.r2) {
            if got != want {
                diffs.push(format!("r2 {got} expected {want}"));
            }
        }
        let flag = if diffs.is_empty() { "MATCH" } else { "MISMATCH" };
        if !diffs.is_empty() {
            let note = if row.flagged_anomalous {
                " (row flagged anomalous in the reference)"
            } else {
                ""
            };
            mismatches.push(format!("{}: {}{note}", row.name, diffs.join("; ")));
        }
        rows.push(CensusRow {
            name: row.name.to_string(),
            order: row.order,
            subgroups: subs.len() as u64,
            abelian_subgroups: abelian,
            r1,
            r2,
            truncated: row.continued,
            flags: vec![flag.into()],
        });
    }
    print!("{}", render_rows(&rows, opts.format));
    if mismatches.is_empty() {
        0
    } else {
        for m in &mismatches {
            eprintln!("MISMATCH {m}");
        }
        1
    }
}

fn build_for_row(
    row: &ExpectedRow,
    imports: &[(String, PathBuf)],
) -> Result<Option<FiniteGroup>, Error> {
    if let Some((_, path)) = imports.iter().find(|(name, _)| name == row.name) {
        let group = FiniteGroup::from_cayley_file(path)?;
        if group.order() as u64 != row.order {
            return Err(Error::InvalidTable(format!(
                "import for {} has order {}, expected {}",
                row.name,
                group.order(),
                row.order
            )));
        }
        return Ok(Some(group));
    }
    match row.spec {
        Some(spec) => Ok(Some(group_from_spec(spec)?)),
        None => Ok(None),
    }
}

pub fn cmd_rank(opts: &GlobalOpts, spec: &str) -> i32 {
    let group = match group_from_spec(spec) {
        Ok(g) => g,
        Err(e) => return fail(&e, &format!("spec {spec:?}")),
    };
    let max_genus = opts.max_genus.clamp(1, 3);
    let report = match monoid::rank(&group, max_genus, opts.budget, DEFAULT_PROBE_BUDGET) {
        Ok(r) => r,
        Err(e) => return fail(&e, &format!("rank of {spec:?}")),
    };
    if report.experimental {
        eprintln!("note: genus-3 counts use an extrapolated relation set (experimental)");
    }
    let mut header: Vec<String> = vec!["name".into(), "order".into()];
    let mut cells: Vec<String> = vec![group.name().to_string(), group.order().to_string()];
    for (i, r) in report.per_genus.iter().enumerate() {
        header.push(format!("r{}", i + 1));
        cells.push(r.to_string());
    }
    header.push("total_lower_bound".into());
    cells.push(report.total().to_string());
    header.push("truncated".into());
    cells.push(report.truncated.to_string());
    match opts.format {
        Format::Json => {
            let obj: serde_json::Map<String, serde_json::Value> = header
                .iter()
                .zip(&cells)
                .map(|(k, v)| {
                    let value = v
                        .parse::<u64>()
                        .map(serde_json::Value::from)
                        .or_else(|_| v.parse::<bool>().map(serde_json::Value::from))
                        .unwrap_or_else(|_| serde_json::Value::from(v.clone()));
                    (k.clone(), value)
                })
                .collect();
            println!("{}", serde_json::Value::from(obj));
        }
        Format::Tsv => {
            println!("{}", header.join("\t"));
            println!("{}", cells.join("\t"));
        }
        Format::Csv => {
            println!("{}", header.join(","));
            println!("{}", cells.join(","));
        }
    }
    0
}

pub fn cmd_cylinders(opts: &GlobalOpts, spec: &str, g: usize, h: usize) -> i32 {
    let group = match group_from_spec(spec) {
        Ok(grp) => grp,
        Err(e) => return fail(&e, &format!("spec {spec:?}")),
    };
    if g >= group.order() || h >= group.order() {
        eprintln!(
            "error: element out of range: group {} has order {}",
            group.name(),
            group.order()
        );
        return 2;
    }
    let classes = cylinder::cylinder_classes(&group, g, h);
    match opts.format {
        Format::Json => {
            let data: Vec<Vec<usize>> = classes.iter().map(|c| c.members.clone()).collect();
            println!("{}", serde_json::to_string(&data).expect("serialize"));
        }
        _ => {
            for class in &classes {
                let members: Vec<String> =
                    class.members.iter().map(|k| k.to_string()).collect();
                println!("{}", render_values(&members, opts.format));
            }
        }
    }
    0
}

#[derive(Debug, Clone, Copy)]
pub enum SequenceFamily {
    Z2 { max_n: u32 },
    Zp { p: u64, max_n: u32 },
}

pub fn cmd_sequence(opts: &GlobalOpts, family: SequenceFamily) -> i32 {
    let values: Result<Vec<String>, Error> = match family {
        SequenceFamily::Z2 { max_n } => (1..=max_n)
            .map(|n| formulas::z2_sequence(n).map(|v| v.to_string()))
            .collect(),
        SequenceFamily::Zp { p, max_n } => (1..=max_n)
            .map(|n| formulas::r_elementary_abelian(p, n).map(|v| v.to_string()))
            .collect(),
    };
    match values {
        Ok(values) => {
            println!("{}", render_values(&values, opts.format));
            0
        }
        Err(e) => fail(&e, "sequence"),
    }
}

#[derive(Debug, Clone, Copy)]
pub enum VerifyKind {
    Cyclic { max_n: u64 },
    Elementary { p: u64, max_n: u32 },
    Dihedral { max_n: u64 },
    Dicyclic { max_n: u64 },
    Recurrence { max_n: u32 },
}

pub fn cmd_verify(opts: &GlobalOpts, kind: VerifyKind) -> i32 {
    let result = match kind {
        VerifyKind::Cyclic { max_n } => verify_cyclic(opts, max_n),
        VerifyKind::Elementary { p, max_n } => verify_elementary(opts, p, max_n),
        VerifyKind::Dihedral { max_n } => verify_dihedral(opts, max_n),
        VerifyKind::Dicyclic { max_n } => verify_dicyclic(opts, max_n),
        VerifyKind::Recurrence { max_n } => verify_recurrence(max_n),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => fail(&e, "verify"),
    }
}

fn verify_cyclic(opts: &GlobalOpts, max_n: u64) -> Result<bool, Error> {
    let mut all = true;
    for n in 1..=max_n {
        let group = FiniteGroup::cyclic(n as usize)?;
        let r1 = monoid::r1(&group, opts.budget)?;
        let tau = formulas::tau(n);
        let subgroups = subgroups::all_subgroups(&group)?.len() as u64;
        let ok = r1 == tau && tau == subgroups;
        all &= ok;
        println!(
            "cyclic n={n}: r1={r1} tau={tau} subgroups={subgroups} {}",
            pass(ok)
        );
    }
    Ok(all)
}

fn verify_elementary(opts: &GlobalOpts, p: u64, max_n: u32) -> Result<bool, Error> {
    let mut all = true;
    for n in 1..=max_n {
        let spec = format!("Z{p}^{n}");
        let group = group_from_spec(&spec)?;
        let orbit = monoid::r1(&group, opts.budget)?;
        let matrix = monoid::sl2_mat_orbits(p, n, opts.budget)?;
        let formula = formulas::r_elementary_abelian(p, n)?;
        let ok = orbit == matrix && matrix == formula;
        all &= ok;
        println!(
            "elementary p={p} n={n}: orbit={orbit} matrix={matrix} formula={formula} {}",
            pass(ok)
        );
    }
    Ok(all)
}

fn verify_dihedral(opts: &GlobalOpts, max_n: u64) -> Result<bool, Error> {
    let mut all = true;
    for n in 2..=max_n {
        let group = FiniteGroup::dihedral_of_order(2 * n as usize)?;
        let r1 = monoid::r1(&group, opts.budget)?;
        let subs = subgroups::all_subgroups(&group)?;
        let abelian = subs.iter().filter(|s| s.is_abelian).count() as u64;
        let formula = subgroups::dihedral_subgroup_formula(n);
        let ok = r1 == abelian && subs.len() as u64 == formula;
        all &= ok;
        println!(
            "dihedral n={n} (D{}): r1={r1} abelian_subgroups={abelian} subgroups={} formula={formula} {}",
            2 * n,
            subs.len(),
            pass(ok)
        );
    }
    Ok(all)
}

fn verify_dicyclic(opts: &GlobalOpts, max_n: u64) -> Result<bool, Error> {
    let mut all = true;
    for n in 2..=max_n {
        let group = FiniteGroup::dicyclic(n as usize)?;
        let r1 = monoid::r1(&group, opts.budget)?;
        let subs = subgroups::all_subgroups(&group)?;
        let abelian = subs.iter().filter(|s| s.is_abelian).count() as u64;
        let formula = subgroups::dicyclic_subgroup_formula(n);
        let ok = r1 == abelian && subs.len() as u64 == formula;
        all &= ok;
        println!(
            "dicyclic n={n} (Dic{n}): r1={r1} abelian_subgroups={abelian} subgroups={} formula={formula} {}",
            subs.len(),
            pass(ok)
        );
    }
    Ok(all)
}

fn verify_recurrence(max_n: u32) -> Result<bool, Error> {
    let mut all = true;
    for p in [2u64, 3, 5] {
        for n in 1..=max_n {
            // f_increment asserts the recurrence and the telescoping
            // identity internally; recompute both here for the report
            let f = formulas::f_increment(p, n)?;
            let prev = formulas::f_increment(p, n - 1)?;
            let step = p.pow(2 * n - 2) * (p - 1);
            let recurrence_ok = f == p * prev + step;
            let telescoped = formulas::r_elementary_abelian(p, n + 1)?
                - formulas::r_elementary_abelian(p, n)?;
            let ok = recurrence_ok && telescoped == f;
            all &= ok;
            println!(
                "recurrence p={p} n={n}: F(n)={f} p*F(n-1)+p^(2n-2)(p-1)={} r(n+1)-r(n)={telescoped} {}",
                p * prev + step,
                pass(ok)
            );
        }
    }
    Ok(all)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Parses `NAME=PATH` pairs for `table --import`.
pub fn parse_import(s: &str) -> Result<(String, PathBuf), String> {
    match s.split_once('=') {
        Some((name, path)) if !name.is_empty() && !path.is_empty() => {
            Ok((name.to_string(), Path::new(path).to_path_buf()))
        }
        _ => Err(format!("expected NAME=PATH, got {s:?}")),
    }
}
