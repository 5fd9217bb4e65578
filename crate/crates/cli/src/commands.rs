//! Subcommands. [`execute`] is the whole program; `main` only wires it to
//! the process streams.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use algord_core::grammar::analysis::{analyze, PrefixVerdict};
use algord_core::grammar::{enumerate_words, intersect_lex_interval, normalize, reverse_order, Bound};
use algord_core::scheme::{scheme_for_ordinal, unfold, BranchAlphabet, BranchKind};
use algord_core::translate::{check_claim, scheme_to_prefix_grammar};
use algord_core::words::embed_into_rationals;
use algord_core::{Error as CoreError, Grammar, Ordinal, RecursionScheme, Word};
use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::formats::{ordinal_pow, parse_grammar, parse_ordinal, parse_scheme};
use crate::report::{AnalysisReport, Assertion, ClaimSummary, GrammarSummary, RunReport};

pub const DEFAULT_MAX_LEN: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "algord", version, about = "Algebraic linear orderings: schemes, prefix grammars and ordinals")]
pub struct Cli {
    /// Derivation depth for pumping searches and unfolding (default 2·|N|+2).
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Word length bound for enumeration and bounded checks.
    #[arg(long = "maxlen", global = true, default_value_t = DEFAULT_MAX_LEN)]
    pub max_len: usize,
    /// Print the JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(short = 'o', global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scatteredness, prefix and rank analysis of a grammar file.
    Analyze { grammar: PathBuf },
    /// Ordinal to scheme to grammar to analysis, with every check asserted.
    Pipeline { ordinal: String },
    /// Unfold a scheme file and list the leaves reached.
    Scheme { file: PathBuf },
    /// Print the canonical scheme of an ordinal below w^(w^w).
    Synth { ordinal: String },
    /// Translate a scheme file into its labeled-frontier prefix grammar.
    Translate {
        file: PathBuf,
        /// Emit the frontier (leaf address) grammar instead.
        #[arg(long)]
        frontier: bool,
    },
    /// List the words of a grammar up to --maxlen in lexicographic order.
    Enum { grammar: PathBuf },
    /// Read `a < b` lines on stdin and embed the keys into (0+11)*01.
    Embed,
    /// Ordinal arithmetic on literals.
    #[command(subcommand)]
    Ordinal(OrdinalOp),
    /// Restrict a grammar to a lexicographic interval.
    Interval {
        grammar: PathBuf,
        /// Lower end, a word over the grammar's terminals (inclusive).
        #[arg(long)]
        lower: Option<String>,
        /// Upper end (inclusive).
        #[arg(long)]
        upper: Option<String>,
        /// Exclude the lower end.
        #[arg(long)]
        lower_strict: bool,
        /// Exclude the upper end.
        #[arg(long)]
        upper_strict: bool,
    },
    /// The same grammar with its terminal order reversed.
    Reverse { grammar: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum OrdinalOp {
    /// a+b
    Add { a: String, b: String },
    /// a·b
    Mul { a: String, b: String },
    /// a^b
    Pow { a: String, b: String },
    /// Prints <, = or >.
    Cmp { a: String, b: String },
}

/// Parses `args` (program name first), runs the command and writes the
/// result. Returns the exit status.
pub fn execute(args: &[String], stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let _ = write!(stderr, "{}", e.render());
            return 2;
        }
    };
    let mut report = RunReport::new(args.iter().skip(1).cloned().collect());
    let text = match run(&cli, &mut report, stdin) {
        Ok(text) => text,
        Err(e) => {
            report.status = 2;
            report.errors.push(e.to_string());
            let _ = writeln!(stderr, "error: {e}");
            String::new()
        }
    };
    let body = if cli.json { report.to_json() } else { text };
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, body) {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    report.status
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub fn load_grammar(path: &Path) -> Result<Grammar, CliError> {
    parse_grammar(&read(path)?)
}

pub fn load_scheme(path: &Path) -> Result<RecursionScheme, CliError> {
    parse_scheme(&read(path)?)
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn run(cli: &Cli, report: &mut RunReport, stdin: &mut dyn BufRead) -> Result<String, CliError> {
    match &cli.command {
        Command::Analyze { grammar } => cmd_analyze(grammar, cli, report),
        Command::Pipeline { ordinal } => cmd_pipeline(ordinal, cli, report),
        Command::Scheme { file } => cmd_scheme(file, cli, report),
        Command::Synth { ordinal } => {
            let s = scheme_for_ordinal(&parse_ordinal(ordinal)?)?;
            report.scheme = Some(s.to_string());
            Ok(s.to_string())
        }
        Command::Translate { file, frontier } => {
            let s = load_scheme(file)?;
            report.scheme = Some(s.to_string());
            let t = scheme_to_prefix_grammar(&s);
            report.grammar = Some(GrammarSummary::of(&t.grammar));
            if *frontier {
                let f = t.frontier()?;
                report.frontier_grammar = Some(GrammarSummary::of(&f));
                Ok(f.to_string())
            } else {
                Ok(t.grammar.to_string())
            }
        }
        Command::Enum { grammar } => {
            let g = load_grammar(grammar)?;
            let (n, r) = normalize(&g);
            let a = g.terminals();
            let mut lines = Vec::new();
            if r.contains_empty_word {
                lines.push("ε".to_string());
            }
            lines.extend(enumerate_words(&n, cli.max_len)?.iter().map(|w| a.render(w)));
            Ok(finish_lines(report, lines))
        }
        Command::Embed => {
            let lines = embed_lines(stdin)?;
            Ok(finish_lines(report, lines))
        }
        Command::Ordinal(op) => {
            let line = ordinal_op(op)?;
            Ok(finish_lines(report, vec![line]))
        }
        Command::Interval { grammar, lower, upper, lower_strict, upper_strict } => {
            let g = load_grammar(grammar)?;
            let bound = |w: &Option<String>, strict: bool| -> Result<Option<Bound>, CliError> {
                w.as_ref()
                    .map(|w| Ok(Bound { word: g.terminals().parse_word(w)?, inclusive: !strict }))
                    .transpose()
            };
            let lo = bound(lower, *lower_strict)?;
            let hi = bound(upper, *upper_strict)?;
            let h = intersect_lex_interval(&g, lo.as_ref(), hi.as_ref());
            report.grammar = Some(GrammarSummary::of(&h));
            Ok(h.to_string())
        }
        Command::Reverse { grammar } => {
            let (h, _) = reverse_order(&load_grammar(grammar)?);
            report.grammar = Some(GrammarSummary::of(&h));
            Ok(h.to_string())
        }
    }
}

fn finish_lines(report: &mut RunReport, lines: Vec<String>) -> String {
    let text = lines.iter().map(|l| format!("{l}\n")).collect();
    report.output = lines;
    text
}

fn cmd_analyze(path: &Path, cli: &Cli, report: &mut RunReport) -> Result<String, CliError> {
    let g = load_grammar(path)?;
    report.grammar = Some(GrammarSummary::of(&g));
    let an = analyze(&g, cli.depth, cli.max_len)?;
    let ar = AnalysisReport::of(&an);
    report.status = if an.is_clean() { 0 } else { 1 };
    let text = format!("{}status: {}\n", ar.to_text(), if an.is_clean() { "clean" } else { "refuted" });
    report.analysis = Some(ar);
    Ok(text)
}

fn cmd_pipeline(literal: &str, cli: &Cli, report: &mut RunReport) -> Result<String, CliError> {
    let alpha = parse_ordinal(literal)?;
    let s = scheme_for_ordinal(&alpha)?;
    report.scheme = Some(s.to_string());
    let t = scheme_to_prefix_grammar(&s);
    report.grammar = Some(GrammarSummary::of(&t.grammar));
    let f = t.frontier()?;
    report.frontier_grammar = Some(GrammarSummary::of(&f));
    let an = analyze(&f, cli.depth, cli.max_len)?;
    let claim = check_claim(&s, &t.grammar, cli.max_len, cli.max_len)?;

    let ar = AnalysisReport::of(&an);
    let omega_omega = Ordinal::omega_power(Ordinal::omega());
    let mut assertions = vec![
        Assertion {
            name: "noScatterednessWitness".into(),
            ok: !an.scattered.is_refutation(),
            detail: Some(ar.scattered_verdict.kind.clone()),
        },
        Assertion {
            name: "prefixUpToBound".into(),
            ok: matches!(an.prefix, PrefixVerdict::PrefixUpTo(_)),
            detail: Some(ar.prefix_verdict.kind.clone()),
        },
        Assertion {
            name: "rankBelowOmegaOmega".into(),
            ok: an.overall_rank_bound < omega_omega,
            detail: Some(an.overall_rank_bound.to_string()),
        },
        Assertion {
            name: "invariants".into(),
            ok: an.violations.is_empty(),
            detail: (!ar.violations.is_empty()).then(|| ar.violations.join("; ")),
        },
    ];
    let cs = ClaimSummary::of(&claim, t.branch.alphabet());
    assertions.push(Assertion {
        name: "claim".into(),
        ok: claim.holds(),
        detail: Some(format!("{} mismatches", claim.mismatches.len())),
    });
    report.status = if assertions.iter().all(|a| a.ok) { 0 } else { 1 };

    let mut text = format!("ordinal: {alpha}\nscheme:\n{}", indent(&s.to_string()));
    text.push_str(&format!("frontier grammar:\n{}", indent(&f.to_string())));
    text.push_str(&ar.to_text());
    text.push_str(&format!(
        "claim at depth {} maxlen {}: {} tree words, {} grammar words, {} skipped, {} mismatches\n",
        cs.depth,
        cs.max_len,
        cs.tree_words,
        cs.grammar_words,
        cs.skipped,
        cs.mismatches.len()
    ));
    for m in &cs.mismatches {
        text.push_str(&format!("  {} {} at {}\n", m.kind, m.word, m.address));
    }
    for a in &assertions {
        text.push_str(&format!("[{}] {}\n", if a.ok { "ok" } else { "FAIL" }, a.name));
    }
    report.analysis = Some(ar);
    report.claim = Some(cs);
    report.assertions = assertions;
    Ok(text)
}

fn address_text(w: &Word) -> String {
    if w.is_empty() {
        "ε".into()
    } else {
        w.letters().iter().map(|l| l.index().to_string()).collect::<Vec<_>>().join("")
    }
}

fn cmd_scheme(path: &Path, cli: &Cli, report: &mut RunReport) -> Result<String, CliError> {
    let s = load_scheme(path)?;
    report.scheme = Some(s.to_string());
    let depth = cli.depth.unwrap_or(2 * s.equations().len() + 2);
    let tree = unfold(&s, depth);
    let mut lines = vec![format!("depth {depth}: {} nodes, {} pending", tree.len(), tree.pending().count())];
    let branch = BranchAlphabet::new(s.alphabet(), BranchKind::Lfr);
    for (addr, label) in tree.frontier() {
        let word = tree.hat(&addr, &branch).map(|h| branch.alphabet().render(&h)).unwrap_or_default();
        lines.push(format!("{} {label} {word}", address_text(&addr)));
    }
    Ok(format!("{}{}", s, finish_lines(report, lines)))
}

fn ordinal_op(op: &OrdinalOp) -> Result<String, CliError> {
    let (a, b) = match op {
        OrdinalOp::Add { a, b } | OrdinalOp::Mul { a, b } | OrdinalOp::Pow { a, b } | OrdinalOp::Cmp { a, b } => {
            (parse_ordinal(a)?, parse_ordinal(b)?)
        }
    };
    Ok(match op {
        OrdinalOp::Add { .. } => a.add(&b).to_string(),
        OrdinalOp::Mul { .. } => a.mul(&b).to_string(),
        OrdinalOp::Pow { .. } => ordinal_pow(&a, &b).to_string(),
        OrdinalOp::Cmp { .. } => match a.cmp(&b) {
            std::cmp::Ordering::Less => "<",
            std::cmp::Ordering::Equal => "=",
            std::cmp::Ordering::Greater => ">",
        }
        .into(),
    })
}

/// Reads `a < b` (or `a > b`) lines; a line with a single key declares it.
/// Keys are placed in name order and listed in order of first appearance.
pub fn embed_lines(input: &mut dyn BufRead) -> Result<Vec<String>, CliError> {
    let mut keys: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut intern = |k: &str, keys: &mut Vec<String>| -> usize {
        *index.entry(k.to_string()).or_insert_with(|| {
            keys.push(k.to_string());
            keys.len() - 1
        })
    };
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|source| CliError::Io { path: PathBuf::from("<stdin>"), source })?;
        let l = line.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        let (lhs, rhs, flip) = if let Some((a, b)) = l.split_once('<') {
            (a.trim(), b.trim(), false)
        } else if let Some((a, b)) = l.split_once('>') {
            (a.trim(), b.trim(), true)
        } else {
            intern(l, &mut keys);
            continue;
        };
        if lhs.is_empty() || rhs.is_empty() || rhs.contains(['<', '>']) {
            return Err(CliError::Syntax { line: i + 1, message: format!("expected `key < key`, got `{l}`") });
        }
        let (a, b) = (intern(lhs, &mut keys), intern(rhs, &mut keys));
        edges.push(if flip { (b, a) } else { (a, b) });
    }
    let n = keys.len();
    let mut less = vec![vec![false; n]; n];
    for (a, b) in edges {
        less[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if less[i][k] {
                for j in 0..n {
                    if less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
    }
    if (0..n).any(|i| less[i][i]) {
        return Err(CoreError::InconsistentOrder.into());
    }
    for i in 0..n {
        for j in 0..i {
            if !less[i][j] && !less[j][i] {
                return Err(CliError::Usage(format!("keys `{}` and `{}` are never compared", keys[j], keys[i])));
            }
        }
    }
    let mut by_name: Vec<usize> = (0..n).collect();
    by_name.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let placed = embed_into_rationals(&by_name, |&a, &b| less[a][b])?;
    let mut words = vec![Word::default(); n];
    for (k, w) in by_name.into_iter().zip(placed) {
        words[k] = w;
    }
    let bin = algord_core::OrderedAlphabet::binary();
    Ok(keys.iter().zip(&words).map(|(k, w)| format!("{k}:{}", bin.render(w))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn embed(text: &str) -> Result<Vec<String>, CliError> {
        embed_lines(&mut text.as_bytes())
    }

    #[test]
    fn embed_protocol() {
        assert_eq!(embed("b < a\n").unwrap(), ["b:001", "a:01"]);
        assert_eq!(embed("c > b\nb > a\n").unwrap().len(), 3);
        assert!(matches!(embed("a < b\nb < a\n"), Err(CliError::Core(CoreError::InconsistentOrder))));
        assert!(matches!(embed("a < b\nc\n"), Err(CliError::Usage(_))));
        assert!(embed("a <\n").is_err());
    }

    #[test]
    fn ordinal_ops() {
        let op = |o| ordinal_op(&o).unwrap();
        assert_eq!(op(OrdinalOp::Add { a: "w".into(), b: "1".into() }), "w+1");
        assert_eq!(op(OrdinalOp::Add { a: "1".into(), b: "w".into() }), "w");
        assert_eq!(op(OrdinalOp::Mul { a: "2".into(), b: "w".into() }), "w");
        assert_eq!(op(OrdinalOp::Pow { a: "w".into(), b: "w".into() }), "w^w");
        assert_eq!(op(OrdinalOp::Cmp { a: "w^2".into(), b: "w*5".into() }), ">");
    }
}
