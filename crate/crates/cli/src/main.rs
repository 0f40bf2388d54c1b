use std::io::{self, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cewb::executor::load_definitions;
use cewb::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
use cewb::session::{Session, SessionError};
use cewb::shell::{run_execution, Emit, Shell};

#[derive(Parser)]
#[command(name = "cewb", version, about = "Write specifications in controlled English, query and execute them")]
struct Cli {
    /// Lexicon file; the built-in automated-teller vocabulary when absent.
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    /// Session file, replayed on start and updated after every change.
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    /// Specification text to process without interaction.
    #[arg(long, global = true)]
    batch: Option<PathBuf>,
    /// Definition file answering the execution's requests.
    #[arg(long, global = true)]
    defs: Option<PathBuf>,
    /// Representation printed to stdout after a batch run.
    #[arg(long, value_enum)]
    emit: Option<View>,
    /// File for the batch report of paraphrases and answers; defaults to
    /// stdout, or stderr when `--emit` is given.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum View {
    Drs,
    Clauses,
    Paraphrase,
}

impl From<View> for Emit {
    fn from(v: View) -> Emit {
        match v {
            View::Drs => Emit::Drs,
            View::Clauses => Emit::Clauses,
            View::Paraphrase => Emit::Paraphrase,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Edit or list the lexicon.
    Lex {
        #[command(subcommand)]
        action: LexAction,
    },
    /// Answer a question and print every answer.
    Ask { question: String },
    /// Print a representation of the specification.
    Show {
        #[arg(value_enum)]
        view: View,
    },
    /// Simulate the specification, asking for missing facts on stdin.
    Execute,
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
    },
}

#[derive(Subcommand)]
enum LexAction {
    /// Add a record `class|lemma|features|forms|synonyms|abbreviations`.
    Add { record: String },
    /// List the content words as records.
    List,
    /// Remove a content word.
    Rm { lemma: String },
}

fn fail(e: &SessionError) -> ExitCode {
    for d in e.diagnostics() {
        eprintln!("{d}");
    }
    ExitCode::from(e.exit_code() as u8)
}

fn lexicon(cli: &Cli) -> Result<Lexicon, SessionError> {
    Ok(match &cli.lexicon {
        Some(p) => Lexicon::load(p)?,
        None => Lexicon::parse(SIMPLEMAT_LEXICON)?,
    })
}

/// The session from `--session`, extended with the `--batch` text.
fn session(cli: &Cli) -> Result<Session, ExitCode> {
    let lex = lexicon(cli).map_err(|e| fail(&e))?;
    let mut s = match &cli.session {
        Some(p) if p.exists() => Session::load(p, lex).map_err(|e| fail(&e))?,
        _ => Session::new(lex),
    };
    if let Some(path) = &cli.batch {
        let text = std::fs::read_to_string(path).map_err(|e| fail(&SessionError::Io(format!("{}: {e}", path.display()))))?;
        for sentence in cewb::parser::split_sentences(&text) {
            if let Err(e) = s.add(&sentence) {
                return Err(fail(&e));
            }
        }
    }
    Ok(s)
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let io_err = |e: io::Error| {
        eprintln!("{e}");
        ExitCode::FAILURE
    };
    match &cli.command {
        None => {
            let lex = lexicon(&cli).map_err(|e| fail(&e))?;
            let base = match &cli.session {
                Some(p) if p.exists() => Session::load(p, lex).map_err(|e| fail(&e))?,
                _ => Session::new(lex),
            };
            let mut shell = Shell::new(base);
            shell.session_path = cli.session.clone();
            match &cli.batch {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| fail(&SessionError::Io(format!("{}: {e}", path.display()))))?;
                    let mut report: Box<dyn Write> = match (&cli.report, cli.emit) {
                        (Some(p), _) => Box::new(std::fs::File::create(p).map_err(io_err)?),
                        (None, Some(_)) => Box::new(io::stderr()),
                        (None, None) => Box::new(io::stdout()),
                    };
                    let status = shell.run_batch(&text, &mut report).map_err(io_err)?;
                    report.flush().map_err(io_err)?;
                    if let Some(view) = cli.emit {
                        write!(out, "{}", Emit::from(view).render(&shell.session)).map_err(io_err)?;
                    }
                    Ok(ExitCode::from(status as u8))
                }
                None => {
                    shell.repl(&mut io::stdin().lock(), &mut out).map_err(io_err)?;
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Some(Command::Lex { action }) => {
            let mut s = session(&cli)?;
            match action {
                LexAction::List => write!(out, "{}", s.lexicon()).map_err(io_err)?,
                LexAction::Add { record } => {
                    s.add_word(record).map_err(|e| fail(&e))?;
                }
                LexAction::Rm { lemma } => {
                    s.remove_word(lemma, None).map_err(|e| fail(&e))?;
                }
            }
            if matches!(action, LexAction::List) {
                return Ok(ExitCode::SUCCESS);
            }
            // Edits persist in the session file, or else in the lexicon file.
            match (&cli.session, &cli.lexicon) {
                (Some(p), _) => s.save(p).map_err(|e| fail(&e))?,
                (None, Some(p)) => s.lexicon().save(p).map_err(|e| fail(&e.into()))?,
                (None, None) => {
                    eprintln!("nothing to save the edit to: give --session or --lexicon");
                    return Err(ExitCode::from(4));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(Command::Ask { question }) => {
            let s = session(&cli)?;
            let mut any = false;
            for a in s.ask(question).map_err(|e| fail(&e))? {
                writeln!(out, "{a}").map_err(io_err)?;
                any = true;
            }
            if !any {
                writeln!(out, "{}", cewb::engine::Answer::No).map_err(io_err)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(Command::Show { view }) => {
            let s = session(&cli)?;
            write!(out, "{}", Emit::from(*view).render(&s)).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        Some(Command::Execute) => {
            let s = session(&cli)?;
            let defs = match &cli.defs {
                Some(p) => load_definitions(p, s.lexicon()).map_err(|e| fail(&e.into()))?,
                None => Vec::new(),
            };
            run_execution(&s, defs, &mut io::stdin().lock(), &mut out).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        Some(Command::Serve { addr }) => {
            let rt = tokio::runtime::Runtime::new().map_err(io_err)?;
            eprintln!("listening on http://{addr}");
            rt.block_on(cewb_service::serve(*addr)).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
