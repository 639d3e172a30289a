//! The `deckbench` command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use deckbench_core::extremal::DEFAULT_WITNESS_LIMIT;
use deckbench_core::recognize::DEFAULT_ORACLE_CAP;
use deckbench_core::{
    bound_by_name, common_card_count, decode_graph6, encode_graph6, family, full_deck, verify_bound, Deck,
    EnumerateError, ExtremalRecord, Graph, GraphClass, PairRelation, Property, Subdeck, BOUNDS,
};

use crate::deckfile::{parse_deck, write_deck};
use crate::error::{exit, CliError};
use crate::parallel;
use crate::report::{json_line, table, verdict_text, FamilyJson, RecordJson, VerdictJson};

#[derive(Debug, Parser)]
#[command(name = "deckbench", version, about = "Decks, common cards and exhaustive extremal search for small graphs")]
pub struct Cli {
    /// Worker threads for parallel searches (default: all cores)
    #[arg(long, global = true, env = "DECKBENCH_THREADS")]
    pub threads: Option<usize>,
    /// Print plain-text tables instead of JSON lines
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the deck of a graph as a deck file
    Deck {
        /// Graph in graph6
        graph6: String,
    },
    /// Count common cards of two graphs, with a per-card breakdown
    Common {
        /// First graph in graph6
        a: String,
        /// Second graph in graph6
        b: String,
    },
    /// Print a forest / unicyclic pair of family 1, 2 or 3
    Family {
        /// Family number
        #[arg(long)]
        id: u8,
        /// Size parameter
        #[arg(long)]
        k: usize,
        /// Recompute the common-card count
        #[arg(long)]
        check: bool,
    },
    /// Decide a property of the parent graph of a (partial) deck
    Recognize {
        /// tree, forest, connected, bipartite or girth
        #[arg(long)]
        property: Property,
        /// Order of the parent graph
        #[arg(long)]
        n: usize,
        /// Deck file, or `-` for standard input
        #[arg(long)]
        deck: PathBuf,
        /// Largest order the preimage search may enumerate
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// List every graph whose deck contains the given cards
    Preimages {
        /// Order of the parent graph
        #[arg(long)]
        n: usize,
        /// Deck file, or `-` for standard input
        #[arg(long)]
        deck: PathBuf,
        /// Largest order the preimage search may enumerate
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
    },
    /// Maximum common cards between two classes of graphs of order n
    Search {
        /// Order of both graphs
        #[arg(long)]
        n: usize,
        /// Class of the first graph
        #[arg(long, required_unless_present = "different_girth", requires = "class_b")]
        class_a: Option<GraphClass>,
        /// Class of the second graph
        #[arg(long, required_unless_present = "different_girth", requires = "class_a")]
        class_b: Option<GraphClass>,
        /// Compare all pairs of graphs with different girth instead of two classes
        #[arg(long, conflicts_with_all = ["class_a", "class_b"])]
        different_girth: bool,
        /// Witness pairs to list
        #[arg(long, default_value_t = DEFAULT_WITNESS_LIMIT)]
        witnesses: usize,
        /// Report wall-clock time (makes output vary between runs)
        #[arg(long)]
        timing: bool,
    },
    /// Check a named bound at every order in a range
    Verify {
        /// Bound name (an unknown name lists the valid ones)
        #[arg(long)]
        bound: String,
        /// First order to check (at least 3)
        #[arg(long)]
        n_min: usize,
        /// Last order to check
        #[arg(long)]
        n_max: usize,
        /// Witness pairs to list per order
        #[arg(long, default_value_t = DEFAULT_WITNESS_LIMIT)]
        witnesses: usize,
        /// Report wall-clock time
        #[arg(long)]
        timing: bool,
    },
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    // output is buffered so the work can run inside a thread pool
    let mut buf = Vec::new();
    let result = match cli.threads.filter(|&t| t > 0) {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut buf)),
            Err(e) => Err(CliError::Invalid(format!("cannot start {t} threads: {e}"))),
        },
        None => dispatch(&cli, &mut buf),
    };
    let flushed = out.write_all(&buf).and_then(|_| out.flush());
    let result = result.and_then(|code| flushed.map(|_| code).map_err(CliError::from));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "deckbench: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> Result<i32, CliError> {
    match &cli.command {
        Command::Deck { graph6 } => {
            let g = parse_graph6(graph6)?;
            let deck = full_deck(&g)?;
            out.write_all(write_deck(g.order(), deck.cards()).as_bytes())?;
        }
        Command::Common { a, b } => common(&parse_graph6(a)?, &parse_graph6(b)?, out)?,
        Command::Family { id, k, check } => {
            let f = family(*id, *k)?;
            writeln!(out, "{}", encode_graph6(&f.forest))?;
            writeln!(out, "{}", encode_graph6(&f.unicyclic))?;
            let measured = if *check { Some(common_card_count(&f.forest, &f.unicyclic)?) } else { None };
            out.write_all(json_line(&FamilyJson::new(&f, measured)).as_bytes())?;
            if measured.is_some_and(|m| m != f.expected_common) {
                return Err(CliError::Invalid(format!(
                    "family {id} with k = {k} shares {} cards, expected {}",
                    measured.unwrap_or(0),
                    f.expected_common
                )));
            }
        }
        Command::Recognize { property, n, deck, oracle_cap } => {
            let sub = read_subdeck(deck, *n)?;
            let verdict = VerdictJson::from(&parallel::recognize(&sub, *property, *oracle_cap)?);
            let text = if cli.pretty { verdict_text(&verdict) } else { json_line(&verdict) };
            out.write_all(text.as_bytes())?;
        }
        Command::Preimages { n, deck, oracle_cap } => {
            let sub = read_subdeck(deck, *n)?;
            for p in parallel::preimage_search(&sub, *oracle_cap)? {
                writeln!(out, "{p}")?;
            }
        }
        Command::Search { n, class_a, class_b, different_girth, witnesses, timing } => {
            let relation = match (class_a, class_b) {
                (Some(a), Some(b)) if !different_girth => PairRelation::Classes(*a, *b),
                _ => PairRelation::DifferentGirth,
            };
            let record = RecordJson::from_record(&timed_search(*n, relation, *witnesses, *timing)?);
            let text = if cli.pretty { table(&[record]) } else { json_line(&record) };
            out.write_all(text.as_bytes())?;
        }
        Command::Verify { bound, n_min, n_max, witnesses, timing } => {
            let spec = bound_by_name(bound).ok_or_else(|| {
                let names: Vec<_> = BOUNDS.iter().map(|b| b.name).collect();
                CliError::Invalid(format!("unknown bound {bound:?} (expected one of: {})", names.join(", ")))
            })?;
            if *n_min < 3 || n_min > n_max {
                return Err(CliError::Invalid(format!("need 3 <= n-min <= n-max, got {n_min}..{n_max}")));
            }
            let mut rows = Vec::new();
            let mut failed = false;
            verify_bound(spec, *n_min..*n_max + 1, |n, relation| {
                let record = timed_search(n, relation, *witnesses, *timing)?;
                Ok::<_, CliError>(record)
            })?
            .iter()
            .for_each(|row| {
                failed |= row.is_failure();
                rows.push(RecordJson::from_row(spec, row));
            });
            if cli.pretty {
                out.write_all(table(&rows).as_bytes())?;
            } else {
                for r in &rows {
                    out.write_all(json_line(r).as_bytes())?;
                }
            }
            if failed {
                return Ok(exit::BOUND_VIOLATED);
            }
        }
    }
    Ok(exit::OK)
}

fn timed_search(
    n: usize,
    relation: PairRelation,
    witnesses: usize,
    timing: bool,
) -> Result<ExtremalRecord, EnumerateError> {
    let start = Instant::now();
    let mut record = parallel::max_common_cards_with_limit(n, relation, witnesses)?;
    record.elapsed = timing.then(|| start.elapsed());
    Ok(record)
}

fn parse_graph6(arg: &str) -> Result<Graph, CliError> {
    decode_graph6(arg).map_err(|source| CliError::Graph6 { arg: arg.to_string(), source })
}

fn common(a: &Graph, b: &Graph, out: &mut dyn Write) -> Result<(), CliError> {
    if a.order() != b.order() {
        return Err(CliError::Invalid(format!("graphs have different orders {} and {}", a.order(), b.order())));
    }
    let (da, db): (Deck, Deck) = (full_deck(a)?, full_deck(b)?);
    writeln!(out, "{}", da.cards().intersection_size(db.cards()))?;
    let keys: BTreeSet<_> = da.cards().iter().chain(db.cards().iter()).map(|(c, _)| c.clone()).collect();
    for card in keys {
        let (x, y) = (da.cards().multiplicity(&card), db.cards().multiplicity(&card));
        writeln!(out, "{card}\t{x}\t{y}\t{}", x.min(y))?;
    }
    Ok(())
}

fn read_subdeck(path: &PathBuf, n: usize) -> Result<Subdeck, CliError> {
    let shown = path.display().to_string();
    let mut text = String::new();
    let read = if shown == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|source| CliError::Io { path: shown.clone(), source })?;
    let sub = parse_deck(&text).map_err(|source| CliError::DeckFile { path: shown, source })?;
    if sub.parent_order() != n {
        return Err(CliError::Invalid(format!("deck file is for order {} but --n is {n}", sub.parent_order())));
    }
    Ok(sub)
}
