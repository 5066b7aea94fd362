//! Command-line front end: construct groups from a small spec grammar or
//! load them from files, inspect structure, query supplementation and
//! Sylow/Hall predicates, run the statement suites over a catalog, and
//! mine for subgroups that are nc- but not c-supplemented.
//!
//! Exit codes: 0 clean, 1 suite violation, 2 resource cap exceeded,
//! 3 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use grouplab::catalog::{
    default_catalog, fixtures, load_catalog, load_group, save_group, CatalogEntry, Scale,
};
use grouplab::construct::{
    alternating, cyclic, dihedral, direct_product, elementary_abelian, psl2,
    semidirect_product_matrix, symmetric, wreath_product_cyclic_top,
};
use grouplab::error::{Error, Result};
use grouplab::group::Group;
use grouplab::lattice::enumerate_subgroups;
use grouplab::modp::{factor_u64, ModMatrix};
use grouplab::perm::Perm;
use grouplab::structure::{
    composition_factors, is_nilpotent, is_p_nilpotent, is_section_free_of, is_simple,
    is_solvable, spectrum,
};
use grouplab::subgroup::Subgroup;
use grouplab::supplement::{find_supplement_among, SupplementKind, SupplementStatus};
use grouplab::sylow::{hall, sylow};
use grouplab::verify::{run_suite, CheckSelection};
use grouplab::Bounds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "grouplab",
    version,
    about = "Finite permutation groups: construction, structure, supplementation certificates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Order ceiling for exhaustive subgroup enumeration.
    #[arg(long, global = true, default_value_t = 2000)]
    max_order: u64,

    /// Cap on explicit element enumeration.
    #[arg(long, global = true, default_value_t = 100_000)]
    element_cap: u64,

    /// Cap on coset-action index.
    #[arg(long, global = true, default_value_t = 100_000)]
    index_cap: u64,

    /// Seed for deterministic sampling.
    #[arg(long, global = true, default_value_t = 0xA4)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Catalog directory, or `empty` for no catalog. Defaults to
    /// $GROUPLAB_CATALOG, then the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a group from a spec string and write its group file.
    ///
    /// Grammar: A4 | S<n> | C<n> | D<order> | EA(p,k) | PSL2(q) |
    /// fixture:<name> | wr(<spec>,m) | sd(p,k,[matrix]) | prod(a,b),
    /// or a path to an existing .group file.
    Construct {
        spec: String,
        /// Output path (default: derived from the group name).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print structural facts about a group.
    Inspect { group: String },
    /// Evaluate one predicate on a group.
    ///
    /// Predicates: solvable, simple, p-nilpotent (--p), core (--h),
    /// sylow (--p), hall (--pi), nc-supp (--h), c-supp (--h),
    /// sections (--model), spectrum.
    Check {
        group: String,
        predicate: String,
        /// Subgroup generator in cycle notation; repeat for several.
        #[arg(long = "h")]
        h: Vec<String>,
        /// Prime for p-indexed predicates.
        #[arg(long)]
        p: Option<u64>,
        /// Comma-separated prime set for hall.
        #[arg(long)]
        pi: Option<String>,
        /// Model group spec for the sections predicate.
        #[arg(long)]
        model: Option<String>,
    },
    /// Run statement checks over the catalog.
    Suite {
        /// Check ids (comma-separated) or `all`.
        names: Option<String>,
    },
    /// List every (group, subgroup) pair that is nc- but not
    /// c-supplemented, over exhaustive-scale catalog entries.
    Mine,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    };
    process::exit(code);
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ResourceExceeded(_) => 2,
        Error::InvariantViolated(_) => 2,
        _ => 3,
    }
}

fn run(cli: Cli) -> Result<i32> {
    let bounds = Bounds {
        exhaustive_order_bound: cli.max_order,
        element_cap: cli.element_cap,
        index_cap: cli.index_cap,
        sample_seed: cli.seed,
    };
    match &cli.cmd {
        Cmd::Construct { spec, out } => cmd_construct(spec, out.clone(), &bounds, cli.format),
        Cmd::Inspect { group } => cmd_inspect(group, &bounds, cli.format),
        Cmd::Check {
            group,
            predicate,
            h,
            p,
            pi,
            model,
        } => cmd_check(group, predicate, h, *p, pi.as_deref(), model.as_deref(), &bounds, cli.format),
        Cmd::Suite { names } => {
            let entries = load_entries(cli.catalog.as_deref(), &bounds)?;
            cmd_suite(names.as_deref().unwrap_or("all"), &entries, &bounds, cli.format)
        }
        Cmd::Mine => {
            let entries = load_entries(cli.catalog.as_deref(), &bounds)?;
            cmd_mine(&entries, &bounds, cli.format)
        }
    }
}

fn load_entries(catalog: Option<&str>, bounds: &Bounds) -> Result<Vec<CatalogEntry>> {
    let env_choice = std::env::var("GROUPLAB_CATALOG").ok();
    let choice = catalog.map(str::to_string).or(env_choice);
    match choice.as_deref() {
        Some("empty") => Ok(Vec::new()),
        Some(dir) => load_catalog(Path::new(dir), bounds),
        None => default_catalog(bounds),
    }
}

// ---------------------------------------------------------------------
// Spec grammar.
// ---------------------------------------------------------------------

/// Split on top-level commas, respecting (...) and [...] nesting.
fn split_top(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        parts.push(cur.trim().to_string());
    }
    parts
}

/// `name(<args>)` -> Some(args).
fn call_args<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    let rest = s.strip_prefix(name)?.trim();
    if rest.starts_with('(') && rest.ends_with(')') {
        Some(&rest[1..rest.len() - 1])
    } else {
        None
    }
}

fn int_arg<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("expected {what}, got `{s}`")))
}

fn prefixed_int(s: &str, prefix: char) -> Option<u64> {
    let rest = s.strip_prefix(prefix)?;
    (!rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())).then(|| rest.parse().ok())?
}

fn parse_spec(s: &str) -> Result<Group> {
    let s = s.trim();
    if s == "A4" {
        return alternating(4);
    }
    if let Some(args) = call_args(s, "EA") {
        let parts = split_top(args);
        let [p, k] = parts.as_slice() else {
            return Err(Error::InvalidParameter(format!("EA needs (p,k), got `{s}`")));
        };
        return elementary_abelian(int_arg(p, "a prime")?, int_arg(k, "a rank")?);
    }
    if let Some(args) = call_args(s, "PSL2") {
        return psl2(int_arg(args, "an odd prime")?);
    }
    if let Some(args) = call_args(s, "wr") {
        let parts = split_top(args);
        let [inner, m] = parts.as_slice() else {
            return Err(Error::InvalidParameter(format!(
                "wr needs (<spec>,m), got `{s}`"
            )));
        };
        let base = parse_spec(inner)?;
        return Ok(wreath_product_cyclic_top(&base, int_arg(m, "a block count")?)?.group);
    }
    if let Some(args) = call_args(s, "sd") {
        let parts = split_top(args);
        let [p, k, matrix] = parts.as_slice() else {
            return Err(Error::InvalidParameter(format!(
                "sd needs (p,k,[matrix entries]), got `{s}`"
            )));
        };
        let p: u64 = int_arg(p, "a prime")?;
        let k: usize = int_arg(k, "a rank")?;
        let body = matrix
            .trim()
            .trim_start_matches('[')
            .trim_end_matches(']');
        let data = body
            .split(',')
            .map(|e| int_arg(e, "a matrix entry"))
            .collect::<Result<Vec<u64>>>()?;
        return Ok(semidirect_product_matrix(&ModMatrix::new(p, k, data)?)?.group);
    }
    if let Some(args) = call_args(s, "prod") {
        let parts = split_top(args);
        let [a, b] = parts.as_slice() else {
            return Err(Error::InvalidParameter(format!("prod needs (a,b), got `{s}`")));
        };
        let ga = parse_spec(a)?;
        let gb = parse_spec(b)?;
        return Ok(direct_product(&ga, &gb)?.group);
    }
    if let Some(n) = prefixed_int(s, 'S') {
        return symmetric(n as usize);
    }
    if let Some(n) = prefixed_int(s, 'C') {
        return cyclic(n as usize);
    }
    if let Some(n) = prefixed_int(s, 'D') {
        if n % 2 != 0 || n < 2 {
            return Err(Error::InvalidParameter(format!(
                "D<order> needs an even order of at least 2, got {n}"
            )));
        }
        return dihedral((n / 2) as usize);
    }
    Err(Error::InvalidParameter(format!(
        "cannot parse group spec `{s}` (grammar: A4 | S<n> | C<n> | D<order> | EA(p,k) | PSL2(q) | fixture:<name> | wr(<spec>,m) | sd(p,k,[matrix]) | prod(a,b))"
    )))
}

/// Resolve a group argument: an existing .group file, a fixture name, or a
/// spec-grammar string.
fn build_entry(arg: &str, bounds: &Bounds) -> Result<CatalogEntry> {
    let s = arg.trim();
    let path = Path::new(s);
    if path.is_file() {
        return load_group(path, bounds);
    }
    if let Some(rest) = s.strip_prefix("fixture:") {
        let want = if rest.eq_ignore_ascii_case("a4") { "A4" } else { rest };
        return fixtures(bounds)?
            .into_iter()
            .find(|e| e.name == want)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown fixture `{rest}` (have A4, remark2, remark3, remark4)"
                ))
            });
    }
    let g = parse_spec(s)?;
    Ok(CatalogEntry::new(s, g, &[], bounds))
}

// ---------------------------------------------------------------------
// Output helpers.
// ---------------------------------------------------------------------

fn bounds_json(b: &Bounds) -> serde_json::Value {
    json!({
        "exhaustive_order_bound": b.exhaustive_order_bound,
        "element_cap": b.element_cap,
        "index_cap": b.index_cap,
        "sample_seed": b.sample_seed,
    })
}

fn bounds_line(b: &Bounds) -> String {
    format!(
        "bounds: max-order {}, element-cap {}, index-cap {}, seed {:#x}",
        b.exhaustive_order_bound, b.element_cap, b.index_cap, b.sample_seed
    )
}

fn group_json(e: &CatalogEntry) -> serde_json::Value {
    json!({
        "name": e.name,
        "degree": e.group.degree(),
        "order": e.group.order().to_string(),
    })
}

fn fmt_gens(s: &Subgroup) -> String {
    let gens = s.group().generators();
    if gens.is_empty() {
        return "<1>".into();
    }
    let inner: Vec<String> = gens.iter().map(|p| p.to_string()).collect();
    format!("<{}>", inner.join(" "))
}

fn gens_list(s: &Subgroup) -> Vec<String> {
    s.group().generators().iter().map(|p| p.to_string()).collect()
}

fn factored(n: u64) -> String {
    if n == 1 {
        return "1".into();
    }
    factor_u64(n)
        .into_iter()
        .map(|(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Write to stdout, exiting quietly if the reader closed the pipe.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    if write!(stdout, "{text}").is_err() || stdout.flush().is_err() {
        process::exit(0);
    }
}

fn out_line(text: &str) {
    out(text);
    out("\n");
}

fn emit(format: Format, value: serde_json::Value, text: String) {
    match format {
        Format::Json => out_line(&serde_json::to_string_pretty(&value).unwrap()),
        Format::Text => out_line(&text),
    }
}

// ---------------------------------------------------------------------
// Commands.
// ---------------------------------------------------------------------

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

fn cmd_construct(
    spec: &str,
    out: Option<PathBuf>,
    bounds: &Bounds,
    format: Format,
) -> Result<i32> {
    let entry = build_entry(spec, bounds)?;
    let path = out.unwrap_or_else(|| PathBuf::from(format!("{}.group", file_stem(&entry.name))));
    save_group(&entry, &path)?;
    emit(
        format,
        json!({
            "command": "construct",
            "group": group_json(&entry),
            "file": path.display().to_string(),
            "bounds": bounds_json(bounds),
        }),
        format!(
            "name {}\ndegree {}\norder {}\nwrote {}",
            entry.name,
            entry.group.degree(),
            entry.group.order(),
            path.display()
        ),
    );
    Ok(0)
}

fn cmd_inspect(group: &str, bounds: &Bounds, format: Format) -> Result<i32> {
    let entry = build_entry(group, bounds)?;
    let g = &entry.group;
    let solvable = is_solvable(g)?;
    let abelian = g.is_abelian();
    let small = g
        .order_u64()
        .is_some_and(|n| n <= bounds.exhaustive_order_bound);
    let mut text = format!(
        "group {}: degree {}, order {}",
        entry.name,
        g.degree(),
        g.order()
    );
    if let Some(n) = g.order_u64() {
        text.push_str(&format!(" = {}", factored(n)));
    }
    text.push_str(&format!("\nabelian: {abelian}\nsolvable: {solvable}"));
    let mut v = json!({
        "command": "inspect",
        "group": group_json(&entry),
        "abelian": abelian,
        "solvable": solvable,
        "bounds": bounds_json(bounds),
    });
    if small {
        let nilpotent = is_nilpotent(g, bounds)?;
        let simple = is_simple(g, bounds)?;
        let factor_orders: Vec<String> = composition_factors(g, bounds)?
            .iter()
            .map(|f| f.order().to_string())
            .collect();
        text.push_str(&format!(
            "\nnilpotent: {nilpotent}\nsimple: {simple}\ncomposition factor orders: {}",
            factor_orders.join(", ")
        ));
        v["nilpotent"] = json!(nilpotent);
        v["simple"] = json!(simple);
        v["composition_factor_orders"] = json!(factor_orders);
    } else {
        text.push_str("\n(order exceeds --max-order: deeper structure scans skipped)");
        v["note"] = json!("order exceeds --max-order: deeper structure scans skipped");
    }
    emit(format, v, text);
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_check(
    group: &str,
    predicate: &str,
    h_gens: &[String],
    p: Option<u64>,
    pi: Option<&str>,
    model: Option<&str>,
    bounds: &Bounds,
    format: Format,
) -> Result<i32> {
    let entry = build_entry(group, bounds)?;
    let g = &entry.group;
    let need_h = || -> Result<Subgroup> {
        if h_gens.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "predicate `{predicate}` needs at least one --h generator"
            )));
        }
        let gens = h_gens
            .iter()
            .map(|s| Perm::parse_cycles(g.degree(), s))
            .collect::<Result<Vec<Perm>>>()?;
        Subgroup::new(g, gens)
    };
    let need_p = || -> Result<u64> {
        p.ok_or_else(|| {
            Error::InvalidParameter(format!("predicate `{predicate}` needs --p <prime>"))
        })
    };
    let header = format!(
        "group {}: degree {}, order {}\n{}",
        entry.name,
        g.degree(),
        g.order(),
        bounds_line(bounds)
    );

    let (result_json, result_text): (serde_json::Value, String) = match predicate {
        "solvable" => {
            let ans = is_solvable(g)?;
            (json!({ "solvable": ans }), format!("solvable: {ans}"))
        }
        "simple" => {
            let ans = is_simple(g, bounds)?;
            (json!({ "simple": ans }), format!("simple: {ans}"))
        }
        "p-nilpotent" => {
            let p = need_p()?;
            let ans = is_p_nilpotent(g, p, bounds)?;
            (
                json!({ "p": p, "p_nilpotent": ans }),
                format!("{p}-nilpotent: {ans}"),
            )
        }
        "core" => {
            let h = need_h()?;
            let core = h.core(bounds)?;
            (
                json!({
                    "h_order": h.order().to_string(),
                    "core_order": core.order().to_string(),
                    "core_gens": gens_list(&core),
                }),
                format!(
                    "H = {} of order {}\ncore order {}, gens {}",
                    fmt_gens(&h),
                    h.order(),
                    core.order(),
                    fmt_gens(&core)
                ),
            )
        }
        "sylow" => {
            let p = need_p()?;
            let s = sylow(g, p, bounds)?;
            (
                json!({
                    "p": p,
                    "order": s.order().to_string(),
                    "gens": gens_list(&s),
                }),
                format!(
                    "Sylow {p}-subgroup of order {}: {}",
                    s.order(),
                    fmt_gens(&s)
                ),
            )
        }
        "hall" => {
            let spec = pi.ok_or_else(|| {
                Error::InvalidParameter("predicate `hall` needs --pi <p1,p2,...>".into())
            })?;
            let primes = spec
                .split(',')
                .map(|t| int_arg(t, "a prime"))
                .collect::<Result<Vec<u64>>>()?;
            match hall(g, &primes, bounds)? {
                Some(s) => (
                    json!({
                        "pi": primes,
                        "exists": true,
                        "order": s.order().to_string(),
                        "gens": gens_list(&s),
                    }),
                    format!(
                        "Hall {primes:?}-subgroup of order {}: {}",
                        s.order(),
                        fmt_gens(&s)
                    ),
                ),
                None => (
                    json!({ "pi": primes, "exists": false }),
                    format!("no Hall {primes:?}-subgroup"),
                ),
            }
        }
        "nc-supp" | "c-supp" => {
            let h = need_h()?;
            let kind = if predicate == "nc-supp" {
                SupplementKind::Nc
            } else {
                SupplementKind::C
            };
            let status = if g
                .order_u64()
                .is_some_and(|n| n <= bounds.exhaustive_order_bound)
            {
                let subs = enumerate_subgroups(g, bounds)?;
                find_supplement_among(&h, kind, &subs, bounds)?
            } else {
                grouplab::supplement::find_supplement_with(&h, kind, bounds, &[])?
            };
            let answer = match &status {
                SupplementStatus::Yes(_) => "yes",
                SupplementStatus::No { .. } => "no",
                SupplementStatus::Unknown => "unknown",
            };
            let mut text = format!(
                "H = {} of order {}\n{predicate}: {answer} ({})",
                fmt_gens(&h),
                h.order(),
                status.tag()
            );
            let witness_json = status.witness().map(|w| w.to_json());
            if let Some(w) = status.witness() {
                text.push_str(&format!(
                    "\nK = {} of order {}\n|HK| = {}, HK subgroup: {}, HK normal: {}, H meet K inside core: {}",
                    fmt_gens(w.k()),
                    w.k().order(),
                    w.hk_order(),
                    w.hk_is_group(),
                    w.hk_normal(),
                    w.intersection_in_core()
                ));
            }
            (
                json!({
                    "h_order": h.order().to_string(),
                    "answer": answer,
                    "tag": status.tag(),
                    "witness": witness_json,
                }),
                text,
            )
        }
        "sections" => {
            let spec = model.ok_or_else(|| {
                Error::InvalidParameter("predicate `sections` needs --model <spec>".into())
            })?;
            let m = parse_spec(spec)?;
            let free = is_section_free_of(g, &m, bounds)?;
            (
                json!({
                    "model": spec,
                    "model_order": m.order().to_string(),
                    "has_section": !free,
                }),
                format!(
                    "section matching {spec} (order {}): {}",
                    m.order(),
                    if free { "no" } else { "yes" }
                ),
            )
        }
        "spectrum" => {
            let spec = spectrum(g, bounds.element_cap)?;
            let text = spec
                .iter()
                .map(|(o, n)| format!("order {o}: {n}"))
                .collect::<Vec<_>>()
                .join("\n");
            let m: serde_json::Map<String, serde_json::Value> = spec
                .iter()
                .map(|(o, n)| (o.to_string(), json!(n)))
                .collect();
            (json!({ "spectrum": m }), text)
        }
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown predicate `{other}` (have solvable, simple, p-nilpotent, core, sylow, hall, nc-supp, c-supp, sections, spectrum)"
            )))
        }
    };

    emit(
        format,
        json!({
            "command": "check",
            "predicate": predicate,
            "group": group_json(&entry),
            "bounds": bounds_json(bounds),
            "result": result_json,
        }),
        format!("{header}\n{result_text}"),
    );
    Ok(0)
}

fn cmd_suite(
    names: &str,
    entries: &[CatalogEntry],
    bounds: &Bounds,
    format: Format,
) -> Result<i32> {
    let sel = CheckSelection::parse(names)?;
    let report = run_suite(entries, bounds, &sel);
    match format {
        Format::Json => out_line(&serde_json::to_string_pretty(&report.to_json(false)).unwrap()),
        Format::Text => out(&report.render_text(false)),
    }
    if report.violations() > 0 {
        Ok(1)
    } else if report.errored() > 0 {
        Ok(2)
    } else {
        Ok(0)
    }
}

fn cmd_mine(entries: &[CatalogEntry], bounds: &Bounds, format: Format) -> Result<i32> {
    let mut findings = Vec::new();
    let mut scanned = 0usize;
    for e in entries {
        if e.scale != Scale::Exhaustive {
            continue;
        }
        scanned += 1;
        let subs = enumerate_subgroups(&e.group, bounds)?;
        for h in &subs {
            let nc = find_supplement_among(h, SupplementKind::Nc, &subs, bounds)?;
            let SupplementStatus::Yes(w) = nc else {
                continue;
            };
            let c = find_supplement_among(h, SupplementKind::C, &subs, bounds)?;
            if let SupplementStatus::No { searched } = c {
                findings.push((e.name.clone(), h.clone(), w, searched));
            }
        }
    }
    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = findings
                .iter()
                .map(|(name, h, w, searched)| {
                    json!({
                        "group": name,
                        "h_gens": gens_list(h),
                        "h_order": h.order().to_string(),
                        "k_gens": gens_list(w.k()),
                        "nc": "witness",
                        "c": format!("exhaustive({searched})"),
                    })
                })
                .collect();
            out_line(
                &serde_json::to_string_pretty(&json!({
                    "command": "mine",
                    "bounds": bounds_json(bounds),
                    "entries_scanned": scanned,
                    "findings": rows,
                }))
                .unwrap(),
            );
        }
        Format::Text => {
            out_line(&bounds_line(bounds));
            for (name, h, w, searched) in &findings {
                out_line(&format!(
                    "{name}: H = {} (order {}) nc-supplemented by K = {}, c-supplemented: no (exhaustive({searched}))",
                    fmt_gens(h),
                    h.order(),
                    fmt_gens(w.k()),
                ));
            }
            out_line(&format!(
                "{} findings over {scanned} exhaustive catalog entries",
                findings.len()
            ));
        }
    }
    Ok(0)
}
