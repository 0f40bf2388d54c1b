use crate::parser::{AttachmentPolicy, NodeId};

use super::RefId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    Distributive,
    Collective,
}

/// One interpretation decision, keyed by the syntax node it concerns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportEntry {
    /// A pronoun noun phrase replaced by its antecedent's description.
    Pronoun { node: NodeId, antecedent: RefId, replacement: String },
    /// A definite noun phrase bound to an earlier referent.
    Definite { node: NodeId, antecedent: RefId },
    /// A proper-noun abbreviation expanded to the full name.
    Abbreviation { node: NodeId, expansion: String },
    /// A synonym replaced by its canonical noun.
    Synonym { node: NodeId, canonical: String },
    /// Elided material restored in front of `node` (an object conjunct or a
    /// coordinated verb phrase).
    Ellipsis { node: NodeId, restored: String },
    Attachment { attached: NodeId, site: NodeId, policy: AttachmentPolicy },
    /// Reading chosen for a coordinated subject.
    PluralReading { node: NodeId, reading: Reading },
}

impl ReportEntry {
    pub fn describe(&self) -> String {
        match self {
            ReportEntry::Pronoun { replacement, .. } => format!("pronoun resolved to `{replacement}`"),
            ReportEntry::Definite { antecedent, .. } => {
                format!("definite noun phrase refers to {}", super::Drs::letter(*antecedent))
            }
            ReportEntry::Abbreviation { expansion, .. } => format!("abbreviation expanded to `{expansion}`"),
            ReportEntry::Synonym { canonical, .. } => format!("synonym replaced by `{canonical}`"),
            ReportEntry::Ellipsis { restored, .. } => format!("restored elided `{restored}`"),
            ReportEntry::Attachment { policy: AttachmentPolicy::MinimalAttachment, .. } => {
                "prepositional phrase attached to the verb phrase".into()
            }
            ReportEntry::Attachment { policy: AttachmentPolicy::RightAssociation, .. } => {
                "relative clause attached to the rightmost noun phrase".into()
            }
            ReportEntry::PluralReading { reading: Reading::Distributive, .. } => "distributive reading".into(),
            ReportEntry::PluralReading { reading: Reading::Collective, .. } => "collective reading".into(),
        }
    }
}

/// Everything the discourse builder decided for one sentence.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResolutionReport {
    pub sentence: usize,
    pub entries: Vec<ReportEntry>,
}

impl ResolutionReport {
    pub fn find(&self, pred: impl Fn(&ReportEntry) -> bool) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| pred(e))
    }
}
