//! Text front ends over a [`Session`]: batch processing of a specification
//! file, an interactive loop, and the execution console. All of them read
//! from any `BufRead` and write to any `Write`.

use std::io::{self, BufRead, Write};
use std::iter::Peekable;
use std::path::PathBuf;

use crate::engine::{Answer, Answers};
use crate::executor::{Assertion, Execution};
use crate::parser::split_sentences;
use crate::session::{Session, SessionError};

/// What to print after a batch run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Drs,
    Clauses,
    Paraphrase,
}

impl Emit {
    pub fn parse(s: &str) -> Option<Emit> {
        match s {
            "drs" => Some(Emit::Drs),
            "clauses" => Some(Emit::Clauses),
            "paraphrase" => Some(Emit::Paraphrase),
            _ => None,
        }
    }

    pub fn render(self, session: &Session) -> String {
        match self {
            Emit::Drs => session.drs_text(),
            Emit::Clauses => session.clauses_text(),
            Emit::Paraphrase => session.paraphrase_text(),
        }
    }
}

pub struct Shell {
    pub session: Session,
    /// Saved after every change when set.
    pub session_path: Option<PathBuf>,
    /// Answers of the last question and how many were shown.
    answers: Option<(Peekable<Answers>, usize)>,
}

fn write_error(out: &mut impl Write, e: &SessionError) -> io::Result<()> {
    for d in e.diagnostics() {
        writeln!(out, "{d}")?;
    }
    if !e.unknown_words().is_empty() {
        writeln!(out, "add the missing words with `:lex add <record>` and resubmit")?;
    }
    Ok(())
}

const HELP: &str = "\
sentences ending in `.` are analysed and shown as a paraphrase for acceptance
questions ending in `?` are answered; `:more` shows further answers
:drs  :clauses  :paraphrase       show the specification
:lex add <record>                 add a word (class|lemma|features|forms|synonyms|abbreviations)
:lex rm <lemma>                   remove a word
:lex list                         list the content words
:execute [<definition file>]      simulate the specification
:save <path>                      write the session file
:load <path>                      replace the session with a saved one
:quit
";

impl Shell {
    pub fn new(session: Session) -> Shell {
        Shell { session, session_path: None, answers: None }
    }

    fn autosave(&self) -> Result<(), SessionError> {
        match &self.session_path {
            Some(p) => self.session.save(p),
            None => Ok(()),
        }
    }

    /// Shows the next answer of the current question and offers the one
    /// after it.
    fn next_answer(&mut self, input: &mut impl BufRead, out: &mut impl Write) -> io::Result<()> {
        loop {
            let Some((answers, shown)) = self.answers.as_mut() else {
                return writeln!(out, "no question to continue");
            };
            match answers.next() {
                Some(a) => {
                    *shown += 1;
                    writeln!(out, "{a}")?;
                }
                None => {
                    let first = *shown == 0;
                    self.answers = None;
                    return writeln!(out, "{}", if first { Answer::No.to_string() } else { "no more answers".into() });
                }
            }
            if answers.peek().is_none() {
                self.answers = None;
                return Ok(());
            }
            write!(out, "more? [y/n] ")?;
            out.flush()?;
            let reply = read_line(input)?.unwrap_or_default();
            if !matches!(reply.trim(), "y" | "yes") {
                // The rest stays available through `:more`.
                return Ok(());
            }
        }
    }

    /// Processes a specification text: declaratives are accepted, questions
    /// answered in full. Stops at the first parse or resolution error.
    /// Returns the exit status (0, or the failing error's code; 3 when some
    /// sentence could not be turned into clauses).
    pub fn run_batch(&mut self, input: &str, out: &mut impl Write) -> io::Result<i32> {
        let mut status = 0;
        for sentence in split_sentences(input) {
            writeln!(out, "> {sentence}")?;
            if sentence.ends_with('?') {
                match self.session.ask(&sentence) {
                    Ok(answers) => {
                        let mut any = false;
                        for a in answers {
                            writeln!(out, "{a}")?;
                            any = true;
                        }
                        if !any {
                            writeln!(out, "{}", Answer::No)?;
                        }
                    }
                    Err(e) => {
                        write_error(out, &e)?;
                        return Ok(e.exit_code());
                    }
                }
                continue;
            }
            let analysis = match self.session.submit(&sentence) {
                Ok(a) => a,
                Err(e) => {
                    write_error(out, &e)?;
                    return Ok(e.exit_code());
                }
            };
            writeln!(out, "{}", analysis.paraphrase.text)?;
            let accepted = self.session.decide(true).expect("pending").expect("accepted");
            for w in &accepted.warnings {
                writeln!(out, "{}", w.diagnostic())?;
                status = 3;
            }
        }
        if let Err(e) = self.autosave() {
            write_error(out, &e)?;
            return Ok(e.exit_code());
        }
        Ok(status)
    }

    /// The interactive loop.
    pub fn repl(&mut self, input: &mut impl BufRead, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "type a sentence, a question, or :help")?;
        loop {
            write!(out, "> ")?;
            out.flush()?;
            let Some(line) = read_line(input)? else { return Ok(()) };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(cmd) = line.strip_prefix(':') {
                if !self.command(cmd.trim(), input, out)? {
                    return Ok(());
                }
                continue;
            }
            if line.ends_with('?') {
                match self.session.ask(line) {
                    Ok(a) => {
                        self.answers = Some((a.peekable(), 0));
                        self.next_answer(input, out)?;
                    }
                    Err(e) => write_error(out, &e)?,
                }
                continue;
            }
            let text = match self.session.submit(line) {
                Ok(a) => a.paraphrase.text.clone(),
                Err(e) => {
                    write_error(out, &e)?;
                    continue;
                }
            };
            writeln!(out, "{text}")?;
            write!(out, "accept? [y/n] ")?;
            out.flush()?;
            let reply = read_line(input)?.unwrap_or_default();
            let accept = matches!(reply.trim(), "y" | "yes");
            match self.session.decide(accept) {
                Ok(Some(acc)) => {
                    writeln!(out, "accepted")?;
                    for w in &acc.warnings {
                        writeln!(out, "{}", w.diagnostic())?;
                    }
                    if let Err(e) = self.autosave() {
                        write_error(out, &e)?;
                    }
                }
                Ok(None) => writeln!(out, "rejected")?,
                Err(e) => write_error(out, &e)?,
            }
        }
    }

    /// Returns false on `:quit`.
    fn command(&mut self, cmd: &str, input: &mut impl BufRead, out: &mut impl Write) -> io::Result<bool> {
        let (head, rest) = cmd.split_once(' ').map_or((cmd, ""), |(h, r)| (h, r.trim()));
        match (head, rest) {
            ("quit" | "q", _) => return Ok(false),
            ("help", _) => write!(out, "{HELP}")?,
            ("drs", _) => write!(out, "{}", self.session.drs_text())?,
            ("clauses", _) => write!(out, "{}", self.session.clauses_text())?,
            ("paraphrase", _) => write!(out, "{}", self.session.paraphrase_text())?,
            ("more", _) => self.next_answer(input, out)?,
            ("lex", r) => {
                let (sub, arg) = r.split_once(' ').map_or((r, ""), |(h, a)| (h, a.trim()));
                let result = match sub {
                    "add" => self.session.add_word(arg).map(|e| format!("added {} `{}`", e.class.name(), e.lemma)),
                    "rm" => self.session.remove_word(arg, None).map(|e| format!("removed {} `{}`", e.class.name(), e.lemma)),
                    "list" => Ok(self.session.lexicon().to_string().trim_end().to_string()),
                    _ => Ok("usage: :lex add <record> | :lex rm <lemma> | :lex list".to_string()),
                };
                match result.and_then(|m| self.autosave().map(|_| m)) {
                    Ok(m) => writeln!(out, "{m}")?,
                    Err(e) => write_error(out, &e)?,
                }
            }
            ("execute", path) => {
                let defs = if path.is_empty() {
                    Ok(Vec::new())
                } else {
                    crate::executor::load_definitions(path, self.session.lexicon()).map_err(SessionError::from)
                };
                match defs {
                    Ok(d) => run_execution(&self.session, d, input, out)?,
                    Err(e) => write_error(out, &e)?,
                }
            }
            ("save", path) if !path.is_empty() => match self.session.save(path) {
                Ok(()) => writeln!(out, "saved {path}")?,
                Err(e) => write_error(out, &e)?,
            },
            ("load", path) if !path.is_empty() => {
                match Session::load(path, self.session.base_lexicon().clone()) {
                    Ok(s) => {
                        self.session = s;
                        self.answers = None;
                        writeln!(out, "loaded {path} ({} accepted)", self.session.sentences().len())?;
                    }
                    Err(e) => write_error(out, &e)?,
                }
            }
            _ => writeln!(out, "unknown command `:{cmd}`; try :help")?,
        }
        Ok(true)
    }
}

fn read_line(input: &mut impl BufRead) -> io::Result<Option<String>> {
    let mut s = String::new();
    if input.read_line(&mut s)? == 0 {
        return Ok(None);
    }
    Ok(Some(s.trim_end_matches(['\n', '\r']).to_string()))
}

/// Runs an execution, printing user and event lines and reading replies
/// to requests from `input`. Rejected replies are reported and asked again.
pub fn run_execution(
    session: &Session,
    definitions: Vec<Assertion>,
    input: &mut impl BufRead,
    out: &mut impl Write,
) -> io::Result<()> {
    let mut exec: Execution = match session.start_execution(definitions) {
        Ok(e) => e,
        Err(e) => return write_error(out, &e),
    };
    loop {
        for m in exec.drain() {
            // Replies typed at the console are already on screen.
            writeln!(out, "{m}")?;
        }
        let Some(request) = exec.pending().cloned() else { break };
        write!(out, "{request} ")?;
        out.flush()?;
        let Some(reply) = read_line(input)? else {
            writeln!(out)?;
            writeln!(out, "execution stopped: no reply to {request}")?;
            return Ok(());
        };
        if let Err(e) = exec.reply(reply.trim()) {
            writeln!(out, "error[{}]: {e}", e.code())?;
        }
    }
    for a in exec.unused() {
        writeln!(out, "unused definition: {a}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{Lexicon, SIMPLEMAT_LEXICON};

    fn shell() -> Shell {
        Shell::new(Session::new(Lexicon::parse(SIMPLEMAT_LEXICON).unwrap()))
    }

    #[test]
    fn batch_prints_paraphrases_and_answers() {
        let mut sh = shell();
        let mut out = Vec::new();
        let code = sh
            .run_batch("The customer enters a card. Who enters a card? Does SM reject the card?", &mut out)
            .unwrap();
        assert_eq!(code, 0);
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "> The customer enters a card.\nthe customer enters a card.\n> Who enters a card?\n\
             Answer: [a customer] enters a card.\n> Does SM reject the card?\nAnswer: no\n"
        );
    }

    #[test]
    fn batch_exit_codes() {
        let mut out = Vec::new();
        assert_eq!(shell().run_batch("The customer enters a flurb.", &mut out).unwrap(), 1);
        assert_eq!(shell().run_batch("It enters a card.", &mut out).unwrap(), 2);
        assert_eq!(shell().run_batch("The customer enters a card or a code.", &mut out).unwrap(), 3);
    }

    #[test]
    fn repl_session() {
        let mut sh = shell();
        let script = "The customer enters a card and a code.\ny\nSM rejects the card.\nn\nWhat does the customer enter?\ny\nWhat does the customer enter?\nn\n:more\n:more\n:clauses\n:quit\n";
        let mut out = Vec::new();
        sh.repl(&mut script.as_bytes(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("accepted\n"));
        assert!(text.contains("rejected\n"));
        assert!(
            text.contains(
                "Answer: the customer enters [a card].\nmore? [y/n] Answer: the customer enters [a code].\n> \
                 Answer: the customer enters [a card].\nmore? [y/n] > Answer: the customer enters [a code].\n> \
                 no question to continue\n"
            ),
            "{text}"
        );
        assert!(text.contains("fact(enter(0, 2)).\n"));
        assert_eq!(sh.session.sentences().len(), 1);
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.session");
        let path = path.display();
        let mut sh = shell();
        let script = format!(":lex add noun|ticket|count,neut|sg=ticket,pl=tickets||\nThe customer enters a ticket.\ny\n:save {path}\n");
        sh.repl(&mut script.as_bytes(), &mut Vec::new()).unwrap();
        let mut other = shell();
        let mut out = Vec::new();
        other.repl(&mut format!(":load {path}\n:clauses\n").as_bytes(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("(1 accepted)\n"), "{text}");
        assert!(text.contains("fact(ticket(1)).\n"), "{text}");
        assert!(other.session.lexicon().is_known("ticket"));
    }

    #[test]
    fn execution_console() {
        let mut sh = shell();
        sh.run_batch("SM checks a code. If the code is valid then SM accepts it.", &mut Vec::new()).unwrap();
        let mut out = Vec::new();
        let replies = "s1 is a simplemat\n7 is a code\n7 is valid\n";
        run_execution(&sh.session, Vec::new(), &mut replies.as_bytes(), &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("event: s1 checks 7\n"), "{text}");
        assert!(text.ends_with("event: s1 accepts 7\n"), "{text}");
    }
}
