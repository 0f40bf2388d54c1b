//! The discourse representation of a text, built sentence by sentence, and
//! the anaphora each sentence resolved.

use cewb::discourse::{Condition, Drs};
use cewb::lexicon::{Lexicon, SIMPLEMAT_LEXICON};
use cewb::parser::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lex = Lexicon::parse(SIMPLEMAT_LEXICON)?;
    let mut drs = Drs::new();
    for text in ["The customer enters a card and a numeric personal code.", "If it is not valid then SM rejects the card."] {
        let (next, report) = drs.extend(&parse(text, &lex)?, &lex)?;
        for entry in &report.entries {
            println!("{text}: {}", entry.describe());
        }
        drs = next;
    }
    print!("{}", drs.pretty());

    let question = parse("Who enters a card?", &lex)?;
    let q = drs.query(&question, &lex)?;
    let qbox = q.drs.get(q.query_box);
    let refs: Vec<String> = qbox.referents.iter().map(|r| Drs::letter(*r)).collect();
    println!("question introduces [{}], asks for {:?}", refs.join(", "), q.wh.map(Drs::letter));
    for e in &qbox.conditions {
        if let Condition::Atom(a) = &e.condition {
            println!("  {}", Drs::render_atom(a));
        }
    }
    Ok(())
}
