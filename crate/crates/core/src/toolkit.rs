//! Command-line layer: argument types, the four subcommands and their
//! JSON/text renderings.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::ap_engine::{
    brute_force_aps, brute_force_aps4, detect_shift_families, detect_symmetric_families,
    split_isolated, APFamily, APSolution, APSolution4, ExceptionalFamily, MAX_WINDOW_ENV,
};
use crate::catalog::{declared_families, verify_paper, PaperConfig, PaperReport, MIN_LEMMA_BOUND};
use crate::error::{Error, Result};
use crate::poly::{integer_factor_search, parse_polynomial, Polynomial};
use crate::recurrence::{minimalize, structure_report, LinearRecurrence, StructureReport};
use crate::trinomial::{factor_trinomial, TrinomialFactorization, TrinomialVariant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Domain(_) | Error::Parse(_) | Error::Precondition(_) | Error::UnsupportedField(_) => {
            EXIT_USAGE
        }
        Error::Numeric { .. } | Error::Construction(_) | Error::DivisionByZero => EXIT_FAILED,
    }
}

/// Inclusive index window written `LO:HI`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl FromStr for Window {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("window must look like LO:HI, got {s:?}"));
        let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(Error::Parse(format!("window {s:?} is empty")));
        }
        Ok(Window { lo, hi })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "recap", version, about = "Arithmetic progressions in linear recurrence sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural report and progression families of a recurrence.
    Classify(ClassifyArgs),
    /// Exact brute-force search for progressions in a window.
    Search(SearchArgs),
    /// Factor a trinomial or an integer polynomial.
    Factor(FactorArgs),
    /// Re-verify the tables, named sequences and lemmas.
    VerifyPaper(VerifyArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Recurrence JSON file (`-` for stdin).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Inline recurrence JSON.
    #[arg(long)]
    pub json: Option<String>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Largest shift `a` tried for shift families.
    #[arg(long, default_value_t = 10)]
    pub max_shift: i64,
    /// Also list isolated solutions in this window.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<Window>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, allow_hyphen_values = true, default_value = "0:60")]
    pub window: Window,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
    pub terms: u8,
    /// Keep progressions whose mean (or an interior term) is zero.
    #[arg(long)]
    pub allow_zero_mean: bool,
    #[arg(long, default_value_t = 10)]
    pub max_shift: i64,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["variant", "poly"]))]
pub struct FactorArgs {
    /// Trinomial variant: mid, low or high.
    #[arg(long, requires = "ab")]
    pub variant: Option<TrinomialVariant>,
    /// Exponents `a > b > 0` of the trinomial.
    #[arg(id = "ab", num_args = 2, value_names = ["A", "B"])]
    pub ab: Vec<i64>,
    /// Polynomial text such as "X^4+X^2-2".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "variant")]
    pub poly: Option<String>,
    /// Largest factor degree searched (polynomials) or largest certified
    /// exponent (trinomials).
    #[arg(long)]
    pub max_deg: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = crate::trinomial::DEFAULT_LEMMA_BOUND)]
    pub lemma_degree_bound: i64,
    /// Fibonacci search window; must start at 0.
    #[arg(long, default_value = "0:60")]
    pub window: Window,
    /// Bound for the power equation search.
    #[arg(long, default_value_t = 10_000)]
    pub power_bound: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilySource {
    Detected,
    Declared,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub source: FamilySource,
    pub family: APFamily,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub recurrence: LinearRecurrence,
    pub structure: StructureReport,
    pub families: Vec<FamilyEntry>,
    /// Why no family search ran, if it was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_search_skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isolated: Option<Vec<APSolution>>,
}

/// A family member with the index of the first family containing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberEntry {
    #[serde(flatten)]
    pub solution: APSolution,
    pub family: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchDocument {
    pub recurrence: LinearRecurrence,
    pub window: [i64; 2],
    pub terms: u8,
    pub families: Vec<FamilyEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<MemberEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isolated: Option<Vec<APSolution>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub four_term: Option<Vec<APSolution4>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub factor: Polynomial,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialFactorization {
    pub input: Polynomial,
    /// Primitive part that was factored.
    pub primitive: Polynomial,
    pub factors: Vec<FactorEntry>,
    /// Product of irreducible factors above the degree bound.
    pub remainder: Polynomial,
    pub certified: bool,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FactorDocument {
    Trinomial(TrinomialFactorization),
    Polynomial(PolynomialFactorization),
}

/// Reads a recurrence from a file, stdin or inline JSON.
pub fn read_recurrence(input: &InputArgs) -> Result<LinearRecurrence> {
    let (text, origin) = match (&input.input, &input.json) {
        (Some(p), _) if p.as_os_str() == "-" => {
            let text = std::io::read_to_string(std::io::stdin())
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            (text, "stdin".to_string())
        }
        (Some(p), _) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            (text, p.display().to_string())
        }
        (None, Some(s)) => (s.clone(), "--json".to_string()),
        (None, None) => return Err(Error::Parse("no recurrence given".into())),
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{origin}: {e}")))
}

/// Detected and declared families of `rec`, or the reason detection was skipped.
pub fn collect_families(
    rec: &LinearRecurrence,
    structure: &StructureReport,
    max_shift: i64,
) -> Result<(Vec<FamilyEntry>, Option<String>)> {
    if structure.is_degenerate {
        return Ok((Vec::new(), Some("degenerate recurrence".into())));
    }
    let detected = |family| FamilyEntry {
        source: FamilySource::Detected,
        family,
    };
    let mut out: Vec<FamilyEntry> = detect_shift_families(rec, max_shift)?
        .into_iter()
        .map(|f| detected(APFamily::Shift(f)))
        .collect();
    if let Some(e) = structure.exceptional.as_ref().and_then(ExceptionalFamily::from_info) {
        out.push(detected(APFamily::Exceptional(e)));
    }
    out.extend(
        detect_symmetric_families(rec, max_shift)?
            .into_iter()
            .map(|f| detected(APFamily::Symmetric(f))),
    );
    out.extend(declared_families(rec).into_iter().map(|family| FamilyEntry {
        source: FamilySource::Declared,
        family,
    }));
    Ok((out, None))
}

/// Families used to split off isolated solutions. Symmetric families are
/// listed but not used here.
fn splitting_families(families: &[FamilyEntry]) -> Vec<APFamily> {
    families
        .iter()
        .filter(|f| !matches!(f.family, APFamily::Symmetric(_)))
        .map(|f| f.family.clone())
        .collect()
}

fn split(solutions: &[APSolution], families: &[APFamily]) -> (Vec<MemberEntry>, Vec<APSolution>) {
    let (members, isolated) = split_isolated(solutions, families);
    let members = members
        .into_iter()
        .map(|s| MemberEntry {
            family: families.iter().position(|f| f.contains(&s)).expect("member of a family"),
            solution: s,
        })
        .collect();
    (members, isolated)
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<ClassificationReport> {
    let rec = read_recurrence(&args.input)?;
    let minimal = minimalize(&rec)?;
    let structure = structure_report(&minimal)?;
    let (families, skipped) = collect_families(&minimal, &structure, args.max_shift)?;
    let isolated = match args.window {
        Some(w) if skipped.is_none() => {
            let sols = brute_force_aps(&minimal, w.lo, w.hi, false)?;
            Some(split_isolated(&sols, &splitting_families(&families)).1)
        }
        _ => None,
    };
    Ok(ClassificationReport {
        recurrence: minimal,
        structure,
        families,
        family_search_skipped: skipped,
        isolated,
    })
}

pub fn cmd_search(args: &SearchArgs) -> Result<SearchDocument> {
    let rec = read_recurrence(&args.input)?;
    let Window { lo, hi } = args.window;
    let minimal = minimalize(&rec)?;
    let structure = structure_report(&minimal)?;
    let (families, _) = collect_families(&minimal, &structure, args.max_shift)?;
    let mut doc = SearchDocument {
        recurrence: rec.clone(),
        window: [lo, hi],
        terms: args.terms,
        families,
        members: None,
        isolated: None,
        four_term: None,
    };
    if args.terms == 4 {
        doc.four_term = Some(brute_force_aps4(&rec, lo, hi, args.allow_zero_mean)?);
    } else {
        let sols = brute_force_aps(&rec, lo, hi, args.allow_zero_mean)?;
        let (members, isolated) = split(&sols, &splitting_families(&doc.families));
        doc.members = Some(members);
        doc.isolated = Some(isolated);
    }
    Ok(doc)
}

pub fn cmd_factor(args: &FactorArgs) -> Result<FactorDocument> {
    if let Some(variant) = args.variant {
        let [a, b] = args.ab[..] else {
            return Err(Error::Parse("--variant needs the two exponents A B".into()));
        };
        let bound = args.max_deg.map(|d| d as i64).unwrap_or(a);
        return Ok(FactorDocument::Trinomial(factor_trinomial(variant, a, b, bound)?));
    }
    let text = args
        .poly
        .as_deref()
        .ok_or_else(|| Error::Parse("give --variant with A B, or --poly".into()))?;
    if !args.ab.is_empty() {
        return Err(Error::Parse("exponents A B only go with --variant".into()));
    }
    let p = parse_polynomial(text)?;
    let max_deg = args.max_deg.unwrap_or(p.degree().max(1));
    let search = integer_factor_search(&p, max_deg)?;
    Ok(FactorDocument::Polynomial(PolynomialFactorization {
        complete: search.complete(),
        input: p,
        primitive: search.input,
        factors: search
            .factors
            .into_iter()
            .map(|(factor, multiplicity)| FactorEntry { factor, multiplicity })
            .collect(),
        remainder: search.remainder,
        certified: search.certified,
    }))
}

pub fn cmd_verify_paper(args: &VerifyArgs) -> Result<PaperReport> {
    if args.lemma_degree_bound < MIN_LEMMA_BOUND {
        return Err(Error::Domain(format!(
            "--lemma-degree-bound must be at least {MIN_LEMMA_BOUND} to cover the cubic tables"
        )));
    }
    if args.window.lo != 0 {
        return Err(Error::Domain("verify-paper window must start at 0".into()));
    }
    let cfg = PaperConfig {
        lemma_bound: args.lemma_degree_bound,
        fibonacci_hi: args.window.hi,
        power_bound: args.power_bound,
        ..PaperConfig::default()
    };
    verify_paper(&cfg)
}

fn recurrence_text(rec: &LinearRecurrence) -> String {
    let d = rec.order();
    let mut rhs = Vec::new();
    for i in (0..d).rev() {
        let a = rec.a(i);
        if num_traits::Zero::is_zero(a) {
            continue;
        }
        let idx = if i == 0 { "f_n".to_string() } else { format!("f_{{n+{i}}}") };
        rhs.push(if num_traits::One::is_one(a) { idx } else { format!("({a})*{idx}") });
    }
    let init: Vec<String> = rec
        .initial()
        .iter()
        .enumerate()
        .map(|(i, v)| format!("f_{i} = {v}"))
        .collect();
    format!("f_{{n+{d}}} = {}; {}", rhs.join(" + "), init.join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn families_text(out: &mut String, families: &[FamilyEntry]) {
    let _ = writeln!(out, "families:");
    if families.is_empty() {
        let _ = writeln!(out, "  none");
    }
    for (i, f) in families.iter().enumerate() {
        let src = match f.source {
            FamilySource::Detected => "detected",
            FamilySource::Declared => "declared",
        };
        let _ = writeln!(out, "  #{i} [{src}] {}", f.family);
    }
}

fn triple(s: &APSolution) -> String {
    format!("(f_{}, f_{}, f_{}) = ({}, {}, {})", s.outer[0], s.mean, s.outer[1], s.values[0], s.values[1], s.values[2])
}

pub fn classify_text(r: &ClassificationReport) -> String {
    let s = &r.structure;
    let mut out = String::new();
    let _ = writeln!(out, "recurrence: {}", recurrence_text(&r.recurrence));
    let _ = writeln!(out, "minimal order: {}", s.minimal_order);
    let _ = writeln!(out, "simple: {}", yes(s.is_simple));
    let _ = writeln!(out, "degenerate: {}", yes(s.is_degenerate));
    let _ = writeln!(out, "unitary: {}", yes(s.is_unitary));
    match &s.symmetric {
        Some(m) => {
            let _ = writeln!(out, "symmetric: M={}", m.m);
        }
        None => {
            let _ = writeln!(out, "symmetric: no");
        }
    }
    match &s.exceptional {
        Some(e) => {
            let _ = writeln!(out, "exceptional: K={} gamma={} R={} N={}", e.k, e.gamma, e.r, e.n);
        }
        None => {
            let _ = writeln!(out, "exceptional: no");
        }
    }
    let _ = writeln!(out, "integer defined: {}", yes(s.integer_defined));
    if let Some(why) = &r.family_search_skipped {
        let _ = writeln!(out, "family search skipped: {why}");
    } else {
        families_text(&mut out, &r.families);
    }
    if let Some(iso) = &r.isolated {
        let _ = writeln!(out, "isolated:");
        for s in iso {
            let _ = writeln!(out, "  {}", triple(s));
        }
    }
    out
}

pub fn search_text(d: &SearchDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "recurrence: {}", recurrence_text(&d.recurrence));
    let _ = writeln!(out, "window: {}:{}  terms: {}", d.window[0], d.window[1], d.terms);
    families_text(&mut out, &d.families);
    if let Some(m) = &d.members {
        let _ = writeln!(out, "family members: {}", m.len());
        for e in m {
            let _ = writeln!(out, "  {}  #{}", triple(&e.solution), e.family);
        }
    }
    if let Some(iso) = &d.isolated {
        let _ = writeln!(out, "isolated: {}", iso.len());
        for s in iso {
            let _ = writeln!(out, "  {}", triple(s));
        }
    }
    if let Some(four) = &d.four_term {
        let _ = writeln!(out, "four-term progressions: {}", four.len());
        for s in four {
            let _ = writeln!(out, "  {s}");
        }
    }
    out
}

fn factor_product(factors: &[(Polynomial, usize)]) -> String {
    factors
        .iter()
        .map(|(f, e)| if *e > 1 { format!("({f})^{e}") } else { format!("({f})") })
        .collect::<Vec<_>>()
        .join("")
}

pub fn factor_text(d: &FactorDocument) -> String {
    let mut out = String::new();
    match d {
        FactorDocument::Trinomial(t) => {
            let _ = writeln!(out, "{} = {}", t.product(), {
                let mut fs = vec![(t.cyclotomic_cofactor.clone(), 1)];
                fs.extend(t.noncyclotomic_factors.iter().map(|f| (f.clone(), 1)));
                factor_product(&fs)
            });
            let _ = writeln!(out, "cyclotomic cofactor: {}", t.cyclotomic_cofactor);
            let _ = writeln!(out, "exception: {}", t.is_schinzel_exception);
            let _ = writeln!(out, "certified: {}", t.certified);
        }
        FactorDocument::Polynomial(p) => {
            let mut fs: Vec<(Polynomial, usize)> =
                p.factors.iter().map(|e| (e.factor.clone(), e.multiplicity)).collect();
            if !p.remainder.is_constant() {
                fs.push((p.remainder.clone(), 1));
            }
            let _ = writeln!(out, "{} = {}", p.primitive, factor_product(&fs));
            let _ = writeln!(out, "certified: {}", p.certified);
            let _ = writeln!(out, "complete: {}", p.complete);
        }
    }
    out
}

pub fn verify_text(r: &PaperReport) -> String {
    let mut out = String::new();
    for (name, ok) in r.summary() {
        let _ = writeln!(out, "{} {name}", if ok { "PASS" } else { "FAIL" });
    }
    let _ = writeln!(out, "overall: {}", if r.passed { "PASS" } else { "FAIL" });
    out
}

fn render<T: Serialize>(doc: &T, format: Format, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
            s.push('\n');
            s
        }
        Format::Text => text(doc),
    }
}

/// Runs a parsed command and returns its output and exit status.
pub fn run(cli: &Cli) -> Result<(String, i32)> {
    let f = cli.format;
    Ok(match &cli.command {
        Command::Classify(a) => (render(&cmd_classify(a)?, f, classify_text), EXIT_OK),
        Command::Search(a) => (render(&cmd_search(a)?, f, search_text), EXIT_OK),
        Command::Factor(a) => {
            let doc = cmd_factor(a)?;
            let code = match &doc {
                FactorDocument::Trinomial(_) => EXIT_OK,
                FactorDocument::Polynomial(p) if p.certified => EXIT_OK,
                FactorDocument::Polynomial(_) => EXIT_FAILED,
            };
            (render(&doc, f, factor_text), code)
        }
        Command::VerifyPaper(a) => {
            let r = cmd_verify_paper(a)?;
            let code = if r.passed { EXIT_OK } else { EXIT_FAILED };
            (render(&r, f, verify_text), code)
        }
    })
}

/// Message appended to resource errors.
pub fn resource_hint() -> String {
    format!("raise the cap with {MAX_WINDOW_ENV}=<size>")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("recap").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn window_parse() {
        assert_eq!("0:60".parse::<Window>().unwrap(), Window { lo: 0, hi: 60 });
        assert_eq!("-10:10".parse::<Window>().unwrap(), Window { lo: -10, hi: 10 });
        assert!("5:1".parse::<Window>().is_err());
        assert!("5".parse::<Window>().is_err());
    }

    #[test]
    fn classify_fibonacci() {
        let cli = parse(&["classify", "--json", r#"{"coeffs":[1,1],"initial":[0,1]}"#]);
        let Command::Classify(a) = &cli.command else { panic!() };
        let r = cmd_classify(a).unwrap();
        assert_eq!(r.structure.minimal_order, 2);
        assert_eq!(r.families[0].family.to_string(), "shift mid a=3 b=2: (f_{n}, f_{n+2}, f_{n+3})");
    }

    #[test]
    fn classify_degenerate_skips() {
        let cli = parse(&["classify", "--json", r#"{"coeffs":[0,4],"initial":[1,0]}"#]);
        let Command::Classify(a) = &cli.command else { panic!() };
        let r = cmd_classify(a).unwrap();
        assert!(r.structure.is_degenerate && r.families.is_empty());
        assert!(r.family_search_skipped.is_some());
    }

    #[test]
    fn factor_modes() {
        let cli = parse(&["factor", "--variant", "low", "4", "1"]);
        let Command::Factor(a) = &cli.command else { panic!() };
        let FactorDocument::Trinomial(t) = cmd_factor(a).unwrap() else { panic!() };
        assert_eq!(t.noncyclotomic_factors, vec![Polynomial::from_ints(&[2, 1, 1, 1])]);
        assert!(t.certified);
        let cli = parse(&["factor", "--poly", "X^4+X^2-2"]);
        let Command::Factor(a) = &cli.command else { panic!() };
        let FactorDocument::Polynomial(p) = cmd_factor(a).unwrap() else { panic!() };
        assert!(p.complete);
        assert_eq!(p.factors.len(), 3);
    }

    #[test]
    fn usage_errors() {
        let cli = parse(&["verify-paper", "--lemma-degree-bound", "1"]);
        let Command::VerifyPaper(a) = &cli.command else { panic!() };
        assert_eq!(exit_code(&cmd_verify_paper(a).unwrap_err()), EXIT_USAGE);
        assert!(Cli::try_parse_from(["recap", "search", "--json", "{}", "--terms", "5"]).is_err());
        assert!(Cli::try_parse_from(["recap", "factor"]).is_err());
    }
}
