//! The JSON interchange format for braids: the unit every tool in the
//! artifact reads and writes.
//!
//! The schema is frozen, field order included:
//! `{"k": int, "objects": [twice-charge ints], "word": [[i, sign], …],
//! "mobile": optional int}`. `objects` lists charges in twice-integer
//! units; `word` letters are 1-based generator indices with sign ±1;
//! `mobile` is the 0-based starting index of the mobile object when the
//! word is a weave, and is omitted entirely otherwise.

use crate::anyon_model::{Charge, Level, ObjectList, Theory};
use crate::braid_core::weave::Weave;
use crate::braid_core::word::{BraidWord, Letter};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Serialized form of a braid word (optionally a weave), self-describing
/// via its level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidJson {
    /// The level k.
    pub k: u32,
    /// Object charges in twice-integer units.
    pub objects: Vec<u32>,
    /// Letters as `[index, sign]` pairs, first letter applied first.
    pub word: Vec<Letter>,
    /// Starting position of the mobile object (0-based), for weaves.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mobile: Option<usize>,
}

impl BraidJson {
    /// Captures a braid word at a level.
    pub fn from_word(level: Level, word: &BraidWord) -> Self {
        BraidJson {
            k: level.k(),
            objects: word.context().charges().iter().map(Charge::twice).collect(),
            word: word.letters().to_vec(),
            mobile: None,
        }
    }

    /// Captures a weave at a level, recording its mobile index.
    pub fn from_weave(level: Level, weave: &Weave) -> Self {
        BraidJson {
            k: level.k(),
            objects: weave
                .context()
                .charges()
                .iter()
                .map(Charge::twice)
                .collect(),
            word: weave.moves().to_vec(),
            mobile: Some(weave.mobile()),
        }
    }

    /// The canonical serialized string (compact, fixed field order). This
    /// is the byte-stable form used for replay comparisons.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("braid serialization cannot fail")
    }

    /// Parses and validates a serialized braid.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let parsed: BraidJson = serde_json::from_str(text)?;
        parsed.validate()?;
        Ok(parsed)
    }

    /// Checks level, charges, letter indices, and the weave discipline when
    /// a mobile index is present.
    pub fn validate(&self) -> Result<()> {
        let level = Level::new(self.k)?;
        let _ = self.object_list(level)?;
        let word = self.to_word()?;
        if let Some(mobile) = self.mobile {
            Weave::from_braid(&word, mobile)?;
        }
        Ok(())
    }

    /// The declared level.
    pub fn level(&self) -> Result<Level> {
        Level::new(self.k)
    }

    fn object_list(&self, level: Level) -> Result<ObjectList> {
        let charges = self
            .objects
            .iter()
            .map(|&t| Charge::from_twice(t, level))
            .collect::<Result<Vec<_>>>()?;
        ObjectList::new(charges)
    }

    /// Reconstructs the braid word (validating as it goes).
    pub fn to_word(&self) -> Result<BraidWord> {
        let level = Level::new(self.k)?;
        BraidWord::new(self.object_list(level)?, self.word.clone())
    }

    /// Reconstructs the weave; errors when no mobile index was recorded.
    pub fn to_weave(&self) -> Result<Weave> {
        let mobile = self.mobile.ok_or_else(|| {
            Error::Parse("braid JSON has no mobile index, cannot reconstruct a weave".into())
        })?;
        Weave::from_braid(&self.to_word()?, mobile)
    }

    /// A theory at the declared level.
    pub fn theory(&self) -> Result<Theory> {
        Ok(Theory::new(self.level()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon_model::{Level, Theory};

    fn sample_word() -> (Level, BraidWord) {
        let level = Level::new(5).unwrap();
        let th = Theory::new(level);
        let objs = ObjectList::uniform(th.charge(1).unwrap(), 4).unwrap();
        let w = BraidWord::new(objs, vec![(1, 1), (2, -1), (3, 1)]).unwrap();
        (level, w)
    }

    #[test]
    fn serialized_field_order_is_frozen() {
        let (level, w) = sample_word();
        let plain = BraidJson::from_word(level, &w).to_json_string();
        assert_eq!(
            plain,
            r#"{"k":5,"objects":[1,1,1,1],"word":[[1,1],[2,-1],[3,1]]}"#
        );
        let weave = Weave::new(w.context().clone(), 0, vec![(1, 1), (2, -1)]).unwrap();
        let with_mobile = BraidJson::from_weave(level, &weave).to_json_string();
        assert_eq!(
            with_mobile,
            r#"{"k":5,"objects":[1,1,1,1],"word":[[1,1],[2,-1]],"mobile":0}"#
        );
    }

    #[test]
    fn word_round_trips() {
        let (level, w) = sample_word();
        let json = BraidJson::from_word(level, &w);
        let text = json.to_json_string();
        let back = BraidJson::from_json_str(&text).unwrap();
        assert_eq!(back, json);
        assert_eq!(back.to_word().unwrap(), w);
        assert_eq!(back.to_json_string(), text, "re-serialization is stable");
    }

    #[test]
    fn weave_round_trips_with_mobile_index() {
        let level = Level::new(3).unwrap();
        let th = Theory::new(level);
        let ctx = ObjectList::uniform(th.charge(1).unwrap(), 4).unwrap();
        let weave = Weave::new(ctx, 1, vec![(2, 1), (2, 1), (1, -1), (1, -1)]).unwrap();
        let text = BraidJson::from_weave(level, &weave).to_json_string();
        let back = BraidJson::from_json_str(&text).unwrap();
        assert_eq!(back.to_weave().unwrap(), weave);
    }

    #[test]
    fn invalid_payloads_are_rejected() {
        // Charge out of range for the level.
        assert!(BraidJson::from_json_str(r#"{"k":3,"objects":[1,7],"word":[]}"#).is_err());
        // Generator index out of range.
        assert!(
            BraidJson::from_json_str(r#"{"k":3,"objects":[1,1],"word":[[2,1]]}"#).is_err()
        );
        // Mobile index violating the weave discipline.
        assert!(BraidJson::from_json_str(
            r#"{"k":3,"objects":[1,1,1,1],"word":[[3,1]],"mobile":0}"#
        )
        .is_err());
        // Malformed JSON.
        assert!(BraidJson::from_json_str("{").is_err());
        // Bad level.
        assert!(BraidJson::from_json_str(r#"{"k":0,"objects":[0],"word":[]}"#).is_err());
    }

    #[test]
    fn mobile_none_round_trips_as_absent() {
        let (level, w) = sample_word();
        let text = BraidJson::from_word(level, &w).to_json_string();
        assert!(!text.contains("mobile"));
        let back = BraidJson::from_json_str(&text).unwrap();
        assert_eq!(back.mobile, None);
    }
}
