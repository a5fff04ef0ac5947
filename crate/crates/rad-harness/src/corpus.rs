//! Loading, validation and joining of question files, annotation files,
//! prediction files and paired augmentation files.
//!
//! Answer strings are kept verbatim at load time; normalization happens in
//! the metrics module so no raw data is lost.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;

use serde_json::Value;

use crate::augmenter::{AugmentedPair, TemplateId, TemplateLabel};
use crate::error::{Error, Result};

/// Answer-type taxonomy: yes/no, number, other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum AnswerType {
    #[serde(rename = "yes/no")]
    YesNo,
    #[serde(rename = "number")]
    Number,
    #[serde(rename = "other")]
    Other,
}

impl AnswerType {
    pub fn parse(s: &str) -> Option<AnswerType> {
        match s {
            "yes/no" => Some(AnswerType::YesNo),
            "number" => Some(AnswerType::Number),
            "other" => Some(AnswerType::Other),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AnswerType::YesNo => "yes/no",
            AnswerType::Number => "number",
            AnswerType::Other => "other",
        }
    }
}

/// Which dataset family a corpus came from; controls annotator-count checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DatasetTag {
    Vqa,
    VqaCp,
    Visdial,
    Synthetic,
}

impl DatasetTag {
    pub fn parse(s: &str) -> Option<DatasetTag> {
        match s {
            "vqa" => Some(DatasetTag::Vqa),
            "vqacp" => Some(DatasetTag::VqaCp),
            "visdial" => Some(DatasetTag::Visdial),
            "synthetic" => Some(DatasetTag::Synthetic),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DatasetTag::Vqa => "vqa",
            DatasetTag::VqaCp => "vqacp",
            DatasetTag::Visdial => "visdial",
            DatasetTag::Synthetic => "synthetic",
        }
    }

    /// Expected annotator-answer counts for this dataset family.
    fn annotators_ok(&self, n: usize) -> bool {
        match self {
            DatasetTag::Vqa | DatasetTag::VqaCp => n == 10,
            DatasetTag::Visdial => n == 1,
            DatasetTag::Synthetic => n >= 1,
        }
    }
}

/// One question record with its gold answer and annotator answers.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QAExample {
    pub question_id: u64,
    pub image_id: u64,
    pub question_text: String,
    /// The dataset's multiple-choice answer, stored verbatim.
    pub gold_answer: String,
    /// 10 answers for VQA/VQA-CP corpora; a single answer for exact-match
    /// corpora such as VisDial.
    pub annotator_answers: Vec<String>,
    pub question_type: String,
    pub answer_type: AnswerType,
}

/// An ordered, id-unique collection of examples.
#[derive(Debug, Clone)]
pub struct Corpus {
    examples: Vec<QAExample>,
    index: HashMap<u64, usize>,
    pub dataset_tag: DatasetTag,
}

impl Corpus {
    /// Builds a corpus, checking id uniqueness, question shape and
    /// annotator counts. Input order is preserved.
    pub fn new(examples: Vec<QAExample>, dataset_tag: DatasetTag) -> Result<Corpus> {
        let mut index = HashMap::with_capacity(examples.len());
        for (i, ex) in examples.iter().enumerate() {
            if ex.question_text.is_empty() || !ex.question_text.ends_with('?') {
                return Err(Error::schema(
                    "corpus",
                    format!("question {} does not end with '?'", ex.question_id),
                ));
            }
            if !dataset_tag.annotators_ok(ex.annotator_answers.len()) {
                return Err(Error::schema(
                    "corpus",
                    format!(
                        "question {} has {} annotator answers, invalid for dataset {}",
                        ex.question_id,
                        ex.annotator_answers.len(),
                        dataset_tag.as_str()
                    ),
                ));
            }
            if index.insert(ex.question_id, i).is_some() {
                return Err(Error::schema(
                    "corpus",
                    format!("duplicate id {}", ex.question_id),
                ));
            }
        }
        Ok(Corpus {
            examples,
            index,
            dataset_tag,
        })
    }

    pub fn examples(&self) -> &[QAExample] {
        &self.examples
    }

    pub fn get(&self, question_id: u64) -> Option<&QAExample> {
        self.index.get(&question_id).map(|&i| &self.examples[i])
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, QAExample> {
        self.examples.iter()
    }
}

/// A model represented extensionally: question id to predicted answer string.
#[derive(Debug, Clone)]
pub struct PredictionSet {
    pub model_id: String,
    pub entries: HashMap<u64, String>,
    /// Later duplicate ids override earlier ones; this counts the overrides.
    pub duplicates_overridden: usize,
    /// Number of entries whose answer is empty after trimming.
    pub empty_predictions: usize,
}

impl PredictionSet {
    pub fn new(model_id: impl Into<String>) -> PredictionSet {
        PredictionSet {
            model_id: model_id.into(),
            entries: HashMap::new(),
            duplicates_overridden: 0,
            empty_predictions: 0,
        }
    }

    pub fn insert(&mut self, question_id: u64, answer: impl Into<String>) {
        let answer = answer.into();
        if answer.trim().is_empty() {
            self.empty_predictions += 1;
        }
        if self.entries.insert(question_id, answer).is_some() {
            self.duplicates_overridden += 1;
        }
    }

    pub fn get(&self, question_id: u64) -> Option<&str> {
        self.entries.get(&question_id).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Set-level origin of a paired file: one of the internal templates, or an
/// externally produced pairing (back-translation, rephrasings, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetSource {
    Template(TemplateId),
    External,
}

impl SetSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            SetSource::Template(t) => t.token(),
            SetSource::External => "external",
        }
    }
}

impl fmt::Display for SetSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Augmented examples paired one-to-one with originals.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSet {
    pub pairs: Vec<AugmentedPair>,
    pub source: SetSource,
    pub source_label: String,
}

impl PairedSet {
    /// Wraps pairs, checking the one-to-one invariants: each original id
    /// appears at most once, augmented ids are unique and disjoint from the
    /// original ids.
    pub fn new(
        pairs: Vec<AugmentedPair>,
        source: SetSource,
        source_label: impl Into<String>,
    ) -> Result<PairedSet> {
        let mut orig_seen = HashSet::with_capacity(pairs.len());
        let mut aug_seen = HashSet::with_capacity(pairs.len());
        for pair in &pairs {
            if !orig_seen.insert(pair.orig_qid) {
                return Err(Error::schema(
                    "paired set",
                    format!("repeated original id {}", pair.orig_qid),
                ));
            }
            if !aug_seen.insert(pair.aug_qid) {
                return Err(Error::schema(
                    "paired set",
                    format!("repeated augmented id {}", pair.aug_qid),
                ));
            }
        }
        for pair in &pairs {
            if orig_seen.contains(&pair.aug_qid) {
                return Err(Error::schema(
                    "paired set",
                    format!(
                        "augmented id {} collides with an original id",
                        pair.aug_qid
                    ),
                ));
            }
        }
        Ok(PairedSet {
            pairs,
            source,
            source_label: source_label.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Original-to-augmented id map.
    pub fn pairing(&self) -> HashMap<u64, u64> {
        self.pairs.iter().map(|p| (p.orig_qid, p.aug_qid)).collect()
    }
}

/// One element of a questions file.
#[derive(Debug, Clone, PartialEq)]
pub struct QuestionRecord {
    pub question_id: u64,
    pub image_id: u64,
    pub question: String,
}

/// One element of an annotations file.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnotationRecord {
    pub question_id: u64,
    pub image_id: u64,
    pub question_type: String,
    pub answer_type: AnswerType,
    pub gold_answer: String,
    pub annotator_answers: Vec<String>,
}

/// Non-fatal findings from [`join_corpus`].
#[derive(Debug, Clone, PartialEq)]
pub enum JoinWarning {
    /// Question id present in the questions file only.
    QuestionOnly(u64),
    /// Question id present in the annotations file only.
    AnnotationOnly(u64),
    /// The two files disagree on the image id; the questions file wins.
    ImageIdMismatch {
        question_id: u64,
        questions_image: u64,
        annotations_image: u64,
    },
    /// Question text empty or not '?'-terminated; the row is skipped.
    MalformedQuestion(u64),
}

// ---------------------------------------------------------------------------
// JSON walking helpers: schema errors name the offending field and index.
// ---------------------------------------------------------------------------

fn parse_json(text: &str, path_label: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::json_parse(path_label, text, &e))
}

fn field<'a>(obj: &'a Value, key: &str, ctx: &str, path_label: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::schema(path_label, format!("{ctx}: missing field \"{key}\"")))
}

fn field_u64(obj: &Value, key: &str, ctx: &str, path_label: &str) -> Result<u64> {
    field(obj, key, ctx, path_label)?.as_u64().ok_or_else(|| {
        Error::schema(
            path_label,
            format!("{ctx}: field \"{key}\" is not a non-negative integer"),
        )
    })
}

fn field_str<'a>(obj: &'a Value, key: &str, ctx: &str, path_label: &str) -> Result<&'a str> {
    field(obj, key, ctx, path_label)?.as_str().ok_or_else(|| {
        Error::schema(path_label, format!("{ctx}: field \"{key}\" is not a string"))
    })
}

// ---------------------------------------------------------------------------
// Loaders
// ---------------------------------------------------------------------------

/// Parses a questions document: `{"questions": [{"question_id", "image_id",
/// "question"}, ...]}`. Order is preserved; duplicate ids are rejected.
pub fn parse_questions(text: &str, path_label: &str) -> Result<Vec<QuestionRecord>> {
    let root = parse_json(text, path_label)?;
    let items = field(&root, "questions", "document", path_label)?
        .as_array()
        .ok_or_else(|| Error::schema(path_label, "\"questions\" is not an array"))?;

    let mut records = Vec::with_capacity(items.len());
    let mut seen = HashSet::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let ctx = format!("questions[{i}]");
        let question_id = field_u64(item, "question_id", &ctx, path_label)?;
        let image_id = field_u64(item, "image_id", &ctx, path_label)?;
        let question = field_str(item, "question", &ctx, path_label)?.to_string();
        if !seen.insert(question_id) {
            return Err(Error::schema(path_label, format!("duplicate id {question_id}")));
        }
        records.push(QuestionRecord {
            question_id,
            image_id,
            question,
        });
    }
    Ok(records)
}

pub fn load_questions(path: &Path) -> Result<Vec<QuestionRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_questions(&text, &path.display().to_string())
}

/// Parses an annotations document. Annotator answers are extracted in file
/// order; the answers array must have 10 entries for vqa/vqacp corpora.
pub fn parse_annotations(
    text: &str,
    tag: DatasetTag,
    path_label: &str,
) -> Result<Vec<AnnotationRecord>> {
    let root = parse_json(text, path_label)?;
    let items = field(&root, "annotations", "document", path_label)?
        .as_array()
        .ok_or_else(|| Error::schema(path_label, "\"annotations\" is not an array"))?;

    let mut records = Vec::with_capacity(items.len());
    let mut seen = HashSet::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let ctx = format!("annotations[{i}]");
        let question_id = field_u64(item, "question_id", &ctx, path_label)?;
        let image_id = field_u64(item, "image_id", &ctx, path_label)?;
        let question_type = field_str(item, "question_type", &ctx, path_label)?.to_string();
        let answer_type_raw = field_str(item, "answer_type", &ctx, path_label)?;
        let answer_type = AnswerType::parse(answer_type_raw).ok_or_else(|| {
            Error::schema(
                path_label,
                format!("{ctx}: unknown answer_type \"{answer_type_raw}\""),
            )
        })?;
        let gold_answer = field_str(item, "multiple_choice_answer", &ctx, path_label)?.to_string();

        let answers = field(item, "answers", &ctx, path_label)?
            .as_array()
            .ok_or_else(|| {
                Error::schema(path_label, format!("{ctx}: field \"answers\" is not an array"))
            })?;
        if !tag.annotators_ok(answers.len()) {
            return Err(Error::schema(
                path_label,
                format!(
                    "{ctx}: answers array has length {}, expected {} for dataset {}",
                    answers.len(),
                    match tag {
                        DatasetTag::Vqa | DatasetTag::VqaCp => "10",
                        DatasetTag::Visdial => "1",
                        DatasetTag::Synthetic => "at least 1",
                    },
                    tag.as_str()
                ),
            ));
        }
        let mut annotator_answers = Vec::with_capacity(answers.len());
        for (j, ans) in answers.iter().enumerate() {
            let actx = format!("{ctx}.answers[{j}]");
            annotator_answers.push(field_str(ans, "answer", &actx, path_label)?.to_string());
        }

        if !seen.insert(question_id) {
            return Err(Error::schema(path_label, format!("duplicate id {question_id}")));
        }
        records.push(AnnotationRecord {
            question_id,
            image_id,
            question_type,
            answer_type,
            gold_answer,
            annotator_answers,
        });
    }
    Ok(records)
}

pub fn load_annotations(path: &Path, tag: DatasetTag) -> Result<Vec<AnnotationRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_annotations(&text, tag, &path.display().to_string())
}

/// Inner-joins questions and annotations on question id.
///
/// Ids present in exactly one input become warnings, not errors: prediction
/// and annotation files routinely cover subsets of each other. Zero joined
/// rows is an error.
pub fn join_corpus(
    questions: &[QuestionRecord],
    annotations: &[AnnotationRecord],
    dataset_tag: DatasetTag,
) -> Result<(Corpus, Vec<JoinWarning>)> {
    let ann_by_id: HashMap<u64, &AnnotationRecord> =
        annotations.iter().map(|a| (a.question_id, a)).collect();
    let q_ids: HashSet<u64> = questions.iter().map(|q| q.question_id).collect();

    let mut warnings = Vec::new();
    let mut examples = Vec::new();
    for q in questions {
        let Some(ann) = ann_by_id.get(&q.question_id) else {
            warnings.push(JoinWarning::QuestionOnly(q.question_id));
            continue;
        };
        if ann.image_id != q.image_id {
            warnings.push(JoinWarning::ImageIdMismatch {
                question_id: q.question_id,
                questions_image: q.image_id,
                annotations_image: ann.image_id,
            });
        }
        if q.question.is_empty() || !q.question.ends_with('?') {
            warnings.push(JoinWarning::MalformedQuestion(q.question_id));
            continue;
        }
        examples.push(QAExample {
            question_id: q.question_id,
            image_id: q.image_id,
            question_text: q.question.clone(),
            gold_answer: ann.gold_answer.clone(),
            annotator_answers: ann.annotator_answers.clone(),
            question_type: ann.question_type.clone(),
            answer_type: ann.answer_type,
        });
    }
    for ann in annotations {
        if !q_ids.contains(&ann.question_id) {
            warnings.push(JoinWarning::AnnotationOnly(ann.question_id));
        }
    }

    if examples.is_empty() {
        return Err(Error::schema(
            "join",
            "zero joined rows: no question id appears in both inputs",
        ));
    }
    let corpus = Corpus::new(examples, dataset_tag)?;
    Ok((corpus, warnings))
}

/// Parses a predictions document: a JSON array of `{"question_id", "answer"}`.
/// Later duplicates override earlier ones and are counted.
pub fn parse_predictions(
    text: &str,
    model_id: impl Into<String>,
    path_label: &str,
) -> Result<PredictionSet> {
    let root = parse_json(text, path_label)?;
    let items = root
        .as_array()
        .ok_or_else(|| Error::schema(path_label, "predictions document is not an array"))?;

    let mut set = PredictionSet::new(model_id);
    for (i, item) in items.iter().enumerate() {
        let ctx = format!("[{i}]");
        let question_id = field_u64(item, "question_id", &ctx, path_label)?;
        let answer = field_str(item, "answer", &ctx, path_label)?;
        set.insert(question_id, answer);
    }
    Ok(set)
}

pub fn load_predictions(path: &Path) -> Result<PredictionSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let model_id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "model".to_string());
    parse_predictions(&text, model_id, &path.display().to_string())
}

/// Serialized form of one paired line. Field order is the on-disk key order.
#[derive(serde::Serialize, serde::Deserialize)]
struct PairLine {
    orig_qid: u64,
    aug_qid: u64,
    image_id: u64,
    aug_question: String,
    aug_answer: String,
    template: String,
    polarity: Option<String>,
    substituted_value: Option<String>,
    source: String,
}

impl PairLine {
    fn from_pair(pair: &AugmentedPair) -> PairLine {
        PairLine {
            orig_qid: pair.orig_qid,
            aug_qid: pair.aug_qid,
            image_id: pair.image_id,
            aug_question: pair.aug_question.clone(),
            aug_answer: pair.aug_answer.clone(),
            template: pair.template.to_string(),
            polarity: pair.polarity.map(|p| p.as_str().to_string()),
            substituted_value: pair.substituted_value.clone(),
            source: pair.source.clone(),
        }
    }

    fn into_pair(self, line_no: usize, path_label: &str) -> Result<AugmentedPair> {
        let polarity = match self.polarity.as_deref() {
            None => None,
            Some("yes") => Some(crate::augmenter::Polarity::Yes),
            Some("no") => Some(crate::augmenter::Polarity::No),
            Some(other) => {
                return Err(Error::schema(
                    path_label,
                    format!("line {line_no}: polarity must be \"yes\", \"no\" or null, got \"{other}\""),
                ))
            }
        };
        Ok(AugmentedPair {
            orig_qid: self.orig_qid,
            aug_qid: self.aug_qid,
            image_id: self.image_id,
            aug_question: self.aug_question,
            aug_answer: self.aug_answer,
            template: TemplateLabel::parse(&self.template),
            polarity,
            substituted_value: self.substituted_value,
            source: self.source,
        })
    }
}

/// Parses a paired-set document: JSON Lines, one pair per line.
///
/// The set-level source is derived from the content: if every line carries
/// the same internal template token the set is tagged with that template,
/// otherwise it is external. The one-to-one invariants are enforced.
pub fn parse_paired(text: &str, path_label: &str) -> Result<PairedSet> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: PairLine = serde_json::from_str(line).map_err(|e| {
            Error::schema(
                path_label,
                format!("line {line_no}: invalid pair record: {e}"),
            )
        })?;
        pairs.push(parsed.into_pair(line_no, path_label)?);
    }
    if pairs.is_empty() {
        return Err(Error::schema(path_label, "paired file contains no records"));
    }

    let source = derive_set_source(&pairs);
    let source_label = pairs[0].source.clone();
    PairedSet::new(pairs, source, source_label)
}

fn derive_set_source(pairs: &[AugmentedPair]) -> SetSource {
    let mut uniform: Option<TemplateId> = None;
    for pair in pairs {
        match (&pair.template, uniform) {
            (TemplateLabel::Internal(t), None) => uniform = Some(*t),
            (TemplateLabel::Internal(t), Some(u)) if *t == u => {}
            _ => return SetSource::External,
        }
    }
    match uniform {
        Some(t) => SetSource::Template(t),
        None => SetSource::External,
    }
}

pub fn load_paired(path: &Path) -> Result<PairedSet> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_paired(&text, &path.display().to_string())
}

/// Byte-deterministic serialization: one JSON object per line, keys in fixed
/// order, LF line endings.
pub fn paired_to_string(set: &PairedSet) -> String {
    let mut out = String::new();
    for pair in &set.pairs {
        let line = serde_json::to_string(&PairLine::from_pair(pair))
            .expect("pair serialization cannot fail");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn write_paired(set: &PairedSet, path: &Path) -> Result<()> {
    std::fs::write(path, paired_to_string(set)).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augmenter::Polarity;

    fn question_doc() -> &'static str {
        r#"{"questions": [
            {"question_id": 1, "image_id": 7, "question": "What color is the cat?"},
            {"question_id": 2, "image_id": 8, "question": "How many dogs are in the picture?"}
        ]}"#
    }

    #[test]
    fn load_questions_identity() {
        let recs = parse_questions(
            r#"{"questions": [{"question_id": 1, "image_id": 7, "question": "What color is the cat?"}]}"#,
            "test",
        )
        .unwrap();
        assert_eq!(
            recs,
            vec![QuestionRecord {
                question_id: 1,
                image_id: 7,
                question: "What color is the cat?".to_string(),
            }]
        );
    }

    #[test]
    fn load_questions_empty_array() {
        let recs = parse_questions(r#"{"questions": []}"#, "test").unwrap();
        assert!(recs.is_empty());
    }

    #[test]
    fn load_questions_duplicate_id_rejected() {
        let err = parse_questions(
            r#"{"questions": [
                {"question_id": 5, "image_id": 1, "question": "A?"},
                {"question_id": 5, "image_id": 2, "question": "B?"}
            ]}"#,
            "test",
        )
        .unwrap_err();
        assert!(err.to_string().contains("duplicate id 5"), "{err}");
    }

    #[test]
    fn load_questions_missing_field_names_field_and_index() {
        let err = parse_questions(
            r#"{"questions": [{"question_id": 1, "question": "A?"}]}"#,
            "test",
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("questions[0]"), "{msg}");
        assert!(msg.contains("image_id"), "{msg}");
    }

    #[test]
    fn malformed_json_reports_byte_offset() {
        let err = parse_questions("{\"questions\": [,]}", "test").unwrap_err();
        match err {
            Error::JsonParse { offset, .. } => assert_eq!(offset, 15),
            other => panic!("expected JsonParse, got {other:?}"),
        }
    }

    fn annotation_item(qid: u64, n_answers: usize) -> String {
        let answers: Vec<String> = (0..n_answers)
            .map(|i| format!(r#"{{"answer": "white", "answer_confidence": "yes", "answer_id": {}}}"#, i + 1))
            .collect();
        format!(
            r#"{{"question_id": {qid}, "image_id": 7, "question_type": "what color", "answer_type": "other", "multiple_choice_answer": "white", "answers": [{}]}}"#,
            answers.join(",")
        )
    }

    #[test]
    fn load_annotations_identity() {
        let doc = format!(r#"{{"annotations": [{}]}}"#, annotation_item(1, 10));
        let recs = parse_annotations(&doc, DatasetTag::Vqa, "test").unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].gold_answer, "white");
        assert_eq!(recs[0].annotator_answers.len(), 10);
        assert_eq!(recs[0].answer_type, AnswerType::Other);
    }

    #[test]
    fn load_annotations_nine_answers_rejected_for_vqa() {
        let doc = format!(r#"{{"annotations": [{}]}}"#, annotation_item(1, 9));
        let err = parse_annotations(&doc, DatasetTag::Vqa, "test").unwrap_err();
        assert!(err.to_string().contains("length 9"), "{err}");
    }

    #[test]
    fn load_annotations_single_answer_ok_for_visdial() {
        let doc = r#"{"annotations": [{"question_id": 1, "image_id": 7, "question_type": "other", "answer_type": "other", "multiple_choice_answer": "blue", "answers": [{"answer": "blue"}]}]}"#;
        let recs = parse_annotations(doc, DatasetTag::Visdial, "test").unwrap();
        assert_eq!(recs[0].annotator_answers, vec!["blue"]);
    }

    #[test]
    fn load_annotations_unknown_answer_type_rejected() {
        let doc = r#"{"annotations": [{"question_id": 1, "image_id": 7, "question_type": "x", "answer_type": "maybe", "multiple_choice_answer": "blue", "answers": [{"answer": "blue"}]}]}"#;
        let err = parse_annotations(doc, DatasetTag::Synthetic, "test").unwrap_err();
        assert!(err.to_string().contains("unknown answer_type"), "{err}");
    }

    fn annotations_for_join() -> Vec<AnnotationRecord> {
        vec![
            AnnotationRecord {
                question_id: 1,
                image_id: 7,
                question_type: "what color".into(),
                answer_type: AnswerType::Other,
                gold_answer: "white".into(),
                annotator_answers: vec!["white".into()],
            },
            AnnotationRecord {
                question_id: 3,
                image_id: 9,
                question_type: "how many".into(),
                answer_type: AnswerType::Number,
                gold_answer: "2".into(),
                annotator_answers: vec!["2".into()],
            },
        ]
    }

    #[test]
    fn join_inner_joins_and_warns_on_singletons() {
        let questions = parse_questions(question_doc(), "test").unwrap();
        let (corpus, warnings) =
            join_corpus(&questions, &annotations_for_join(), DatasetTag::Synthetic).unwrap();
        assert_eq!(corpus.len(), 1);
        assert_eq!(corpus.examples()[0].question_id, 1);
        assert!(warnings.contains(&JoinWarning::QuestionOnly(2)));
        assert!(warnings.contains(&JoinWarning::AnnotationOnly(3)));
    }

    #[test]
    fn join_is_idempotent() {
        let questions = parse_questions(question_doc(), "test").unwrap();
        let anns = annotations_for_join();
        let (a, _) = join_corpus(&questions, &anns, DatasetTag::Synthetic).unwrap();
        let (b, _) = join_corpus(&questions, &anns, DatasetTag::Synthetic).unwrap();
        assert_eq!(a.examples(), b.examples());
    }

    #[test]
    fn join_zero_rows_is_error() {
        let questions = parse_questions(
            r#"{"questions": [{"question_id": 99, "image_id": 1, "question": "A?"}]}"#,
            "test",
        )
        .unwrap();
        assert!(join_corpus(&questions, &annotations_for_join(), DatasetTag::Synthetic).is_err());
    }

    #[test]
    fn predictions_duplicates_override_with_counter() {
        let set = parse_predictions(
            r#"[{"question_id": 1, "answer": "a"}, {"question_id": 1, "answer": "b"}]"#,
            "m",
            "test",
        )
        .unwrap();
        assert_eq!(set.get(1), Some("b"));
        assert_eq!(set.duplicates_overridden, 1);
    }

    #[test]
    fn predictions_non_integer_id_rejected() {
        let err = parse_predictions(r#"[{"question_id": "one", "answer": "a"}]"#, "m", "test")
            .unwrap_err();
        assert!(err.to_string().contains("question_id"), "{err}");
    }

    fn sample_pair(orig: u64, aug: u64) -> AugmentedPair {
        AugmentedPair {
            orig_qid: orig,
            aug_qid: aug,
            image_id: 7,
            aug_question: "Is the color of the cat white?".into(),
            aug_answer: "yes".into(),
            template: TemplateLabel::Internal(TemplateId::Color),
            polarity: Some(Polarity::Yes),
            substituted_value: Some("white".into()),
            source: "ync".into(),
        }
    }

    #[test]
    fn paired_round_trip_field_for_field() {
        let set = PairedSet::new(
            vec![sample_pair(1, 1_000_000_001), sample_pair(2, 1_000_000_002)],
            SetSource::Template(TemplateId::Color),
            "ync",
        )
        .unwrap();
        let text = paired_to_string(&set);
        let reloaded = parse_paired(&text, "test").unwrap();
        assert_eq!(reloaded, set);
        // Re-serialization is byte identical.
        assert_eq!(paired_to_string(&reloaded), text);
    }

    #[test]
    fn paired_repeated_orig_id_rejected() {
        let text = format!(
            "{}\n{}\n",
            serde_json::to_string(&PairLine::from_pair(&sample_pair(1, 10))).unwrap(),
            serde_json::to_string(&PairLine::from_pair(&sample_pair(1, 11))).unwrap()
        );
        let err = parse_paired(&text, "test").unwrap_err();
        assert!(err.to_string().contains("repeated original id 1"), "{err}");
    }

    #[test]
    fn paired_external_answers_allowed() {
        let line = r#"{"orig_qid": 1, "aug_qid": 900001, "image_id": 7, "aug_question": "Which hue does the cat have?", "aug_answer": "white", "template": "bt", "polarity": null, "substituted_value": null, "source": "bt"}"#;
        let set = parse_paired(line, "test").unwrap();
        assert_eq!(set.source, SetSource::External);
        assert_eq!(set.source_label, "bt");
        assert_eq!(set.pairs[0].aug_answer, "white");
    }
}
