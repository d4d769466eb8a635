//! Command-line driver: parses a presentation file, runs the selected
//! suites, and renders a report with an exit code.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::cayley::{parse_table, Side};
use crate::error::{Error, Result};
use crate::presentation::{parse_presentation, Presentation};
use crate::report::{
    cayley_section, graded_section, squier_section, CayleySection, GradedSection, PresentationInfo, SquierSection,
    Status, SCHEMA,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CERTIFIED: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Graded,
    Squier,
    Cayley,
    All,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "relbimod", about = "Exact verification of relation-bimodule and Squier/Cayley sequences")]
pub struct RunConfig {
    /// Presentation file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    pub command: Command,
    #[arg(long, default_value_t = 8)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 8)]
    pub max_length: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Multiplication table to use instead of enumerating the monoid.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub status: Status,
    pub exit_code: i32,
    pub first_failure: Option<String>,
    pub not_certified: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Command,
    pub presentation: PresentationInfo,
    pub graded: Option<GradedSection>,
    pub squier: Option<SquierSection>,
    pub cayley: Option<CayleySection>,
    pub outcome: Outcome,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Io(msg.into())
}

/// Runs the configured suites. `Err` means an input or usage problem.
pub fn execute(config: &RunConfig) -> Result<RunReport> {
    let text = std::fs::read_to_string(&config.input)
        .map_err(|e| usage(format!("cannot read {}: {e}", config.input.display())))?;
    let pres = parse_presentation(&text)?;
    let table_text = match &config.table {
        Some(path) => {
            Some(std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?)
        }
        None => None,
    };

    let mut graded = None;
    let mut squier = None;
    let mut cayley = None;
    let mut not_certified = Vec::new();
    let cmd = config.command;

    match (&pres, cmd) {
        (Presentation::Algebra(_), Command::Squier | Command::Cayley) => {
            return Err(usage("squier and cayley need a monoid presentation"));
        }
        (_, Command::Graded) if pres.graded_algebra().is_none() => {
            return Err(Error::NotGraded(format!("{} presentation is {}", pres.kind(), pres.homogeneity().label())));
        }
        _ => {}
    }
    if table_text.is_some() && !matches!(pres, Presentation::Monoid(_)) {
        return Err(usage("--table needs a monoid presentation"));
    }

    if matches!(cmd, Command::Graded | Command::All) {
        match pres.graded_algebra() {
            Some(a) => graded = Some(graded_section(&a, config.max_degree)?),
            None => not_certified.push(format!(
                "graded: {} presentation is {}, bimodule checks skipped",
                pres.kind(),
                pres.homogeneity().label()
            )),
        }
    }
    if let Presentation::Monoid(m) = &pres {
        if matches!(cmd, Command::Squier | Command::All) {
            let s = squier_section(m, config.max_length, config.max_degree)?;
            if s.status == Status::NotCertified {
                not_certified.push(format!("squier: slices up to L={} are truncated, not certified", s.max_length));
            }
            squier = Some(s);
        }
        if matches!(cmd, Command::Cayley | Command::All) {
            let table = match &table_text {
                Some(t) => Some(parse_table(t, m)?),
                None => None,
            };
            let c = cayley_section(m, config.max_length, table)?;
            if let Some(msg) = &c.message {
                not_certified.push(format!("cayley: {msg}"));
            }
            cayley = Some(c);
        }
    }

    let first_failure = [
        graded.as_ref().and_then(|g| g.first_failure.as_ref().map(|f| format!("graded: {f}"))),
        squier.as_ref().and_then(|s| s.first_failure.as_ref().map(|f| format!("squier: {f}"))),
        cayley.as_ref().and_then(|c| c.first_failure.as_ref().map(|f| format!("cayley: {f}"))),
    ]
    .into_iter()
    .flatten()
    .next();
    let (status, exit_code) = if first_failure.is_some() {
        (Status::Fail, EXIT_FAIL)
    } else if !not_certified.is_empty() {
        (Status::NotCertified, EXIT_NOT_CERTIFIED)
    } else {
        (Status::Pass, EXIT_PASS)
    };
    Ok(RunReport {
        schema: SCHEMA,
        command: cmd,
        presentation: PresentationInfo::new(&pres),
        graded,
        squier,
        cayley,
        outcome: Outcome { status, exit_code, first_failure, not_certified },
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn render_text(r: &RunReport) -> String {
    let mut s = String::new();
    let p = &r.presentation;
    let _ = writeln!(s, "{} presentation on {} ({})", p.kind, p.generators.join(" "), p.homogeneity);
    for rel in &p.relations {
        let _ = writeln!(s, "  relation: {rel}");
    }
    if let Some(g) = &r.graded {
        let _ = writeln!(s, "\ngraded checks up to degree {}", g.max_degree);
        let _ = writeln!(s, "  d     J   Jsq Jcube     A    FR     H     D   pi2 kerB  bd  pgs conn cont 5t");
        for d in &g.degrees {
            let (m, c) = (&d.dims, &d.checks);
            let _ = writeln!(
                s,
                "  {:<3}{:>5}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>5} {:>3} {:>4} {:>4} {:>4} {:>2}",
                d.degree,
                m.j,
                m.jsq,
                m.jcube,
                m.a,
                m.fr,
                m.h,
                m.d,
                m.pi2,
                m.ker_beta,
                yes(c.bd_exact),
                yes(c.pgs_exact),
                yes(c.connecting),
                yes(c.containment),
                yes(c.five_term)
            );
        }
        let bad = g.mu_kernel.iter().filter(|m| !m.pass).count();
        let _ = writeln!(s, "  free-algebra kernel check: {} degrees, {} failing", g.mu_kernel.len(), bad);
    }
    if let Some(q) = &r.squier {
        let _ = writeln!(s, "\nsquier slices up to length {} ({})", q.max_length, q.certification);
        for sl in &q.slices {
            let _ = writeln!(
                s,
                "  L={:<3} V={:<6} E={:<6} F={:<6} components={:<5} H1 betti={} torsion={:?}",
                sl.length, sl.vertices, sl.edges, sl.cells, sl.components, sl.betti, sl.torsion
            );
        }
        for row in &q.cross_check {
            let _ = writeln!(s, "  n={} betti={} pi2={} {}", row.length, row.betti, row.pi2, yes(row.agree));
        }
        let e = &q.embedding;
        let _ = writeln!(s, "  edge embedding at L={}: {} cells, {}", e.max_len, e.cells, yes(e.pass));
    }
    if let Some(c) = &r.cayley {
        let _ = writeln!(s, "\ncayley ({})", c.source);
        if let Some(msg) = &c.message {
            let _ = writeln!(s, "  {msg}");
        }
        if let Some(n) = c.size {
            let _ = writeln!(s, "  |M| = {n}: {}", c.elements.join(", "));
        }
        for rep in [&c.left, &c.two_sided].into_iter().flatten() {
            let _ = writeln!(
                s,
                "  {}: V={} E={} F={} H0={} H1 betti={} torsion={:?} pi2 rank={} components={} ({}) {}",
                match rep.side {
                    Side::Left => "left",
                    Side::TwoSided => "two-sided",
                },
                rep.vertices,
                rep.edges,
                rep.cells,
                rep.h0_rank,
                rep.h1.betti,
                rep.h1.torsion,
                rep.pi2_rank,
                rep.components.len(),
                rep.note,
                yes(rep.pass)
            );
        }
    }
    let o = &r.outcome;
    let _ = writeln!(s);
    match o.status {
        Status::Pass => {
            let _ = writeln!(s, "verdict: pass");
        }
        Status::Fail => {
            let _ = writeln!(s, "verdict: FAIL ({})", o.first_failure.as_deref().unwrap_or("?"));
        }
        Status::NotCertified => {
            let _ = writeln!(s, "verdict: not certified");
            for n in &o.not_certified {
                let _ = writeln!(s, "  {n}");
            }
        }
    }
    s
}

/// Renders the report; returns the output and the process exit code.
pub fn run(config: &RunConfig) -> (String, i32) {
    match execute(config) {
        Ok(r) => {
            let out = if config.json {
                let mut j = serde_json::to_string_pretty(&r).expect("report serializes");
                j.push('\n');
                j
            } else {
                render_text(&r)
            };
            (out, r.outcome.exit_code)
        }
        Err(e) => (format!("error: {e}\n"), EXIT_USAGE),
    }
}
