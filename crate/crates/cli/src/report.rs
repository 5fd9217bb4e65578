//! JSON report types. Words are rendered over their grammar's terminal
//! tokens and ordinals in literal syntax, so a report reads on its own.

use algord_core::grammar::analysis::{Analysis, InvariantViolation, PrefixVerdict, ScatterednessVerdict};
use algord_core::translate::{ClaimReport, MismatchKind};
use algord_core::{Grammar, OrderedAlphabet, Word};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunReport {
    /// The arguments after the program name.
    pub command: Vec<String>,
    pub status: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grammar: Option<GrammarSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frontier_grammar: Option<GrammarSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<ClaimSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assertions: Vec<Assertion>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub output: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport { command, ..Default::default() }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GrammarSummary {
    pub nonterminals: usize,
    pub productions: usize,
    pub text: String,
}

impl GrammarSummary {
    pub fn of(g: &Grammar) -> Self {
        GrammarSummary { nonterminals: g.nonterminal_count(), productions: g.productions().len(), text: g.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Assertion {
    pub name: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct NonterminalReport {
    pub name: String,
    pub scc: usize,
    pub height: usize,
    pub recursive: bool,
    pub left_recursive: bool,
    pub pumping_prefixes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive_root: Option<String>,
    pub rank_bound: String,
}

/// A verdict as a tag plus whatever witness it carries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Verdict {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonterminal: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub words: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AnalysisReport {
    pub depth: usize,
    pub max_len: usize,
    pub contains_empty_word: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dropped: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inlined: Vec<String>,
    pub analyzed_grammar: String,
    pub nonterminals: Vec<NonterminalReport>,
    pub scattered_verdict: Verdict,
    pub prefix_verdict: Verdict,
    pub overall_rank_bound: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    pub clean: bool,
}

fn words(a: &OrderedAlphabet, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| a.render(w)).collect()
}

pub fn scattered_verdict(a: &OrderedAlphabet, v: &ScatterednessVerdict) -> Verdict {
    match v {
        ScatterednessVerdict::RefutedIncomparable { nonterminal, u, v } => Verdict {
            kind: "RefutedIncomparable".into(),
            nonterminal: Some(nonterminal.clone()),
            words: words(a, &[u.clone(), v.clone()]),
            bound: None,
        },
        ScatterednessVerdict::RefutedDenseTriple { nonterminal, triple } => Verdict {
            kind: "RefutedDenseTriple".into(),
            nonterminal: Some(nonterminal.clone()),
            words: words(a, triple),
            bound: None,
        },
        ScatterednessVerdict::NoWitnessWithinBound(d) => {
            Verdict { kind: "NoWitnessWithinBound".into(), nonterminal: None, words: Vec::new(), bound: Some(*d) }
        }
    }
}

pub fn prefix_verdict(a: &OrderedAlphabet, v: &PrefixVerdict) -> Verdict {
    match v {
        PrefixVerdict::PrefixUpTo(n) => {
            Verdict { kind: "PrefixUpTo".into(), nonterminal: None, words: Vec::new(), bound: Some(*n) }
        }
        PrefixVerdict::Witness { nonterminal, u, v } => Verdict {
            kind: "Witness".into(),
            nonterminal: Some(nonterminal.clone()),
            words: words(a, &[u.clone(), v.clone()]),
            bound: None,
        },
    }
}

pub fn violation_text(a: &OrderedAlphabet, v: &InvariantViolation) -> String {
    match v {
        InvariantViolation::LeftRecursive(x) => format!("{x} is left recursive"),
        InvariantViolation::DoubleSelfEmbedding(x) => format!("{x} derives a form with two occurrences of itself"),
        InvariantViolation::NotPowersOfRoot { nonterminal, shortest, other } => format!(
            "pumping prefixes of {nonterminal} are not powers of one root: {} and {}",
            a.render(shortest),
            a.render(other)
        ),
        InvariantViolation::RankNotBelowOmegaOmega(r) => format!("rank bound {r} is not below w^w"),
    }
}

impl AnalysisReport {
    pub fn of(an: &Analysis) -> Self {
        let a = an.grammar.terminals();
        AnalysisReport {
            depth: an.depth,
            max_len: an.max_len,
            contains_empty_word: an.normalize.contains_empty_word,
            dropped: an.normalize.dropped.clone(),
            inlined: an.inlined.clone(),
            analyzed_grammar: an.grammar.to_string(),
            nonterminals: an
                .nonterminals
                .iter()
                .map(|n| NonterminalReport {
                    name: n.name.clone(),
                    scc: n.scc,
                    height: n.height,
                    recursive: n.recursive,
                    left_recursive: n.left_recursive,
                    pumping_prefixes: words(a, &n.pumping_prefixes),
                    primitive_root: n.primitive_root.as_ref().map(|r| a.render(r)),
                    rank_bound: n.rank_bound.to_string(),
                })
                .collect(),
            scattered_verdict: scattered_verdict(a, &an.scattered),
            prefix_verdict: prefix_verdict(a, &an.prefix),
            overall_rank_bound: an.overall_rank_bound.to_string(),
            violations: an.violations.iter().map(|v| violation_text(a, v)).collect(),
            clean: an.is_clean(),
        }
    }

    /// Plain-text rendering for the terminal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("analyzed grammar:\n");
        for l in self.analyzed_grammar.lines() {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        if self.contains_empty_word {
            out.push_str("language contains the empty word\n");
        }
        if !self.dropped.is_empty() {
            out.push_str(&format!("dropped: {}\n", self.dropped.join(", ")));
        }
        if !self.inlined.is_empty() {
            out.push_str(&format!("inlined: {}\n", self.inlined.join(", ")));
        }
        for n in &self.nonterminals {
            out.push_str(&format!(
                "{}: scc {} height {}{}{} rank<{} root {} pumps [{}]\n",
                n.name,
                n.scc,
                n.height,
                if n.recursive { " recursive" } else { "" },
                if n.left_recursive { " left-recursive" } else { "" },
                n.rank_bound,
                n.primitive_root.as_deref().unwrap_or("-"),
                n.pumping_prefixes.join(" ")
            ));
        }
        out.push_str(&format!("scattered: {}\n", verdict_text(&self.scattered_verdict, "depth")));
        out.push_str(&format!("prefix: {}\n", verdict_text(&self.prefix_verdict, "length")));
        out.push_str(&format!("overall rank bound: {}\n", self.overall_rank_bound));
        for v in &self.violations {
            out.push_str(&format!("violation: {v}\n"));
        }
        out
    }
}

fn verdict_text(v: &Verdict, unit: &str) -> String {
    match (&v.nonterminal, v.bound) {
        (Some(x), _) => format!("{} at {x}: {}", v.kind, v.words.join(", ")),
        (None, Some(b)) => format!("{} ({unit} {b})", v.kind),
        (None, None) => v.kind.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MismatchReport {
    pub kind: String,
    pub word: String,
    pub address: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ClaimSummary {
    pub depth: usize,
    pub max_len: usize,
    pub tree_words: usize,
    pub grammar_words: usize,
    pub skipped: usize,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mismatches: Vec<MismatchReport>,
}

impl ClaimSummary {
    pub fn of(c: &ClaimReport, branch: &OrderedAlphabet) -> Self {
        let child = |w: &Word| w.letters().iter().map(|l| l.index().to_string()).collect::<String>();
        ClaimSummary {
            depth: c.depth,
            max_len: c.max_len,
            tree_words: c.tree_words,
            grammar_words: c.grammar_words,
            skipped: c.skipped,
            holds: c.holds(),
            mismatches: c
                .mismatches
                .iter()
                .map(|m| MismatchReport {
                    kind: match m.kind {
                        MismatchKind::MissingFromGrammar => "MissingFromGrammar".into(),
                        MismatchKind::ExtraInGrammar => "ExtraInGrammar".into(),
                    },
                    word: branch.render(&m.word),
                    address: if m.address.is_empty() { "ε".into() } else { child(&m.address) },
                })
                .collect(),
        }
    }
}
