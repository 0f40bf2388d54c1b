//! Building a vocabulary: templates fill in regular forms, records give
//! full control, and the whole lexicon round-trips through its text form.

use cewb::lexicon::{parse_record, EntryTemplate, FormSlot, Gender, Lexicon, NounKind, SIMPLEMAT_LEXICON};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut lex = Lexicon::parse(SIMPLEMAT_LEXICON)?;

    let ticket = lex.add_entry(EntryTemplate::common_noun("ticket", NounKind::Count))?;
    println!("generated plural: {:?}", ticket.form(FormSlot::Pl));
    lex.add_entry(EntryTemplate::proper_noun("Alice", Gender::Fem))?;
    lex.add_entry(EntryTemplate::verb("print"))?;
    lex.add_entry(parse_record("adj|expired||base=expired,cmp=more expired,sup=most expired||")?)?;

    // Function words and modal verbs are rejected.
    if let Err(e) = lex.add_entry(parse_record("verb|can||")?) {
        println!("refused: {e}");
    }

    lex.remove_entry("clerk", None)?;
    println!("{} content words, version {}", lex.content_words().len(), lex.version());

    let text = lex.to_string();
    let again = Lexicon::parse(&text)?;
    assert_eq!(again.to_string(), text);
    print!("{text}");
    Ok(())
}
