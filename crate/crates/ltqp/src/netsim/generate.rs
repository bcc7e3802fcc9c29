//! Deterministic pod network generation.
//!
//! The generator emits a small social-flavored corpus per pod: one profile
//! document (the traversal anchor listing every other document of the pod),
//! plus post, comment and settings documents. Discovery never depends on
//! which documents a traversal is allowed to prune: documents of one family
//! form a link ring inside a pod, cross-pod links connect a family to the
//! same family of the neighbor pod, and profiles know each other's
//! profiles. So whichever family a query needs, that family's documents
//! alone span the same pod graph that following every link would span.
//!
//! Exclusivity holds by construction: a predicate occurs in a family's
//! documents exactly when that family's shape constrains it, and each
//! family keeps its characteristic predicates to itself.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rdf::{Term, Triple, RDF_TYPE};
use crate::shape::{
    validate_document, write_shapes, ObjectKind, PredicateConstraint, Shape, ShapeIndex,
    ShapeIndexEntry,
};

use super::{DocumentNetwork, FamilySpec, NetsimError, NetworkParams};

/// Base IRI of every generated network; pods live under `<base>pods/<name>/`.
pub const DEFAULT_BASE: &str = "http://ex.org/";

/// Vocabulary and class IRIs used by generated documents. They live outside
/// the network base so a permissive traversal does not try to dereference
/// them.
pub mod vocab {
    pub const NAME: &str = "http://vocab.example/ns#name";
    pub const KNOWS: &str = "http://vocab.example/ns#knows";
    pub const LINKS_TO: &str = "http://vocab.example/ns#linksTo";
    pub const CONTENT: &str = "http://vocab.example/ns#content";
    pub const CREATOR: &str = "http://vocab.example/ns#creator";
    pub const TEXT: &str = "http://vocab.example/ns#text";
    pub const REPLY_OF: &str = "http://vocab.example/ns#replyOf";
    pub const THEME: &str = "http://vocab.example/ns#theme";
    pub const LOCALE: &str = "http://vocab.example/ns#locale";

    pub const CLASS_PERSON: &str = "http://vocab.example/class#Person";
    pub const CLASS_POST: &str = "http://vocab.example/class#Post";
    pub const CLASS_COMMENT: &str = "http://vocab.example/class#Comment";
    pub const CLASS_SETTINGS: &str = "http://vocab.example/class#Settings";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Profile,
    Post,
    Comment,
    Settings,
}

impl FamilyKind {
    pub fn from_name(name: &str) -> Result<Self, NetsimError> {
        match name {
            "profile" => Ok(FamilyKind::Profile),
            "post" => Ok(FamilyKind::Post),
            "comment" => Ok(FamilyKind::Comment),
            "settings" => Ok(FamilyKind::Settings),
            other => Err(NetsimError::UnknownFamily(other.to_string())),
        }
    }

    pub fn class_iri(self) -> Option<&'static str> {
        match self {
            FamilyKind::Profile => Some(vocab::CLASS_PERSON),
            FamilyKind::Post => Some(vocab::CLASS_POST),
            FamilyKind::Comment => Some(vocab::CLASS_COMMENT),
            FamilyKind::Settings => Some(vocab::CLASS_SETTINGS),
        }
    }
}

/// Shape IRIs a family shape may reference.
#[derive(Debug, Clone, Default)]
pub struct ShapeRefs {
    pub profile: Option<String>,
    pub post: Option<String>,
}

/// The shape describing one built-in family.
pub fn builtin_shape(kind: FamilyKind, shape_iri: &str, refs: &ShapeRefs) -> Shape {
    let required = |p: &str, k: ObjectKind| PredicateConstraint::required(p, k).unwrap();
    let multi = |p: &str, k: ObjectKind| PredicateConstraint::multi(p, k).unwrap();
    let optional =
        |p: &str, k: ObjectKind| PredicateConstraint::new(p, k, 0, Some(1)).unwrap();
    let ref_or_iri = |target: &Option<String>| match target {
        Some(iri) => ObjectKind::ShapeRef(iri.clone()),
        None => ObjectKind::Iri,
    };
    let constraints = match kind {
        FamilyKind::Profile => vec![
            required(RDF_TYPE, ObjectKind::Iri),
            required(vocab::NAME, ObjectKind::Literal),
            multi(vocab::KNOWS, ref_or_iri(&refs.profile)),
            multi(vocab::LINKS_TO, ObjectKind::Iri),
        ],
        FamilyKind::Post => vec![
            required(RDF_TYPE, ObjectKind::Iri),
            required(vocab::CONTENT, ObjectKind::Literal),
            required(vocab::CREATOR, ref_or_iri(&refs.profile)),
            multi(vocab::LINKS_TO, ObjectKind::Iri),
        ],
        FamilyKind::Comment => vec![
            required(RDF_TYPE, ObjectKind::Iri),
            required(vocab::TEXT, ObjectKind::Literal),
            required(vocab::CREATOR, ref_or_iri(&refs.profile)),
            optional(vocab::REPLY_OF, ref_or_iri(&refs.post)),
            multi(vocab::LINKS_TO, ObjectKind::Iri),
        ],
        FamilyKind::Settings => vec![
            required(vocab::THEME, ObjectKind::Literal),
            required(vocab::LOCALE, ObjectKind::Literal),
            multi(vocab::LINKS_TO, ObjectKind::Iri),
        ],
    };
    // Settings is closed to exercise closed-shape validation in fixtures.
    let closed = kind == FamilyKind::Settings;
    Shape::new(shape_iri, closed, constraints).expect("built-in shape is well-formed")
}

struct FamilyPlan {
    spec: FamilySpec,
    kind: FamilyKind,
    count: usize,
}

/// Builds the network as a pure function of the parameters.
pub fn generate_network(params: &NetworkParams) -> Result<DocumentNetwork, NetsimError> {
    params.validate()?;
    let base = DEFAULT_BASE;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    // Family plan: an explicit profile spec or an implicit one at count 1.
    let mut plan: Vec<FamilyPlan> = Vec::new();
    let mut has_profile = false;
    for spec in &params.families {
        let kind = FamilyKind::from_name(&spec.name)?;
        let count = if kind == FamilyKind::Profile {
            has_profile = true;
            1
        } else {
            params.documents_per_pod.get(&spec.name).copied().unwrap_or(0)
        };
        plan.push(FamilyPlan {
            spec: spec.clone(),
            kind,
            count,
        });
    }
    if !has_profile {
        plan.insert(
            0,
            FamilyPlan {
                spec: FamilySpec {
                    name: "profile".into(),
                    shape_iri: format!("{base}shapes/Profile"),
                    path_prefix: String::new(),
                },
                kind: FamilyKind::Profile,
                count: 1,
            },
        );
    }

    let refs = ShapeRefs {
        profile: plan
            .iter()
            .find(|f| f.kind == FamilyKind::Profile)
            .map(|f| f.spec.shape_iri.clone()),
        post: plan
            .iter()
            .find(|f| f.kind == FamilyKind::Post)
            .map(|f| f.spec.shape_iri.clone()),
    };
    let shapes: BTreeMap<String, Shape> = plan
        .iter()
        .map(|f| {
            (
                f.spec.shape_iri.clone(),
                builtin_shape(f.kind, &f.spec.shape_iri, &refs),
            )
        })
        .collect();

    // All randomness happens up front, in a fixed order.
    let n = params.pod_count;
    let mut neighbors: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(params.inter_pod_link_density) {
                neighbors[a].push(b);
            }
        }
    }
    let incomplete_count =
        ((params.incomplete_index_fraction * n as f64).round() as usize).min(n);
    let mut pod_order: Vec<usize> = (0..n).collect();
    pod_order.shuffle(&mut rng);
    let incomplete_pods: BTreeSet<usize> = pod_order.into_iter().take(incomplete_count).collect();
    let omission_candidates: Vec<usize> = plan
        .iter()
        .enumerate()
        .filter(|(_, f)| f.count > 0)
        .map(|(i, _)| i)
        .collect();
    let mut omitted_family: BTreeMap<usize, usize> = BTreeMap::new();
    for pod in &incomplete_pods {
        if !omission_candidates.is_empty() {
            let pick = rng.gen_range(0..omission_candidates.len());
            omitted_family.insert(*pod, omission_candidates[pick]);
        }
    }

    let pod_root = |k: usize| format!("{base}pods/pod{k}/");
    let doc_iri = |k: usize, f: &FamilyPlan, i: usize| {
        format!("{}{}{}-{i}", pod_root(k), f.spec.path_prefix, f.spec.name)
    };
    let profile_subject = |k: usize| -> Term {
        let f = plan
            .iter()
            .find(|f| f.kind == FamilyKind::Profile)
            .expect("profile family present");
        Term::iri(format!("{}#me", doc_iri(k, f, 0))).unwrap()
    };
    let iri = |v: String| Term::iri(v).unwrap();
    let triple = |s: Term, p: &str, o: Term| Triple::new(s, Term::iri(p).unwrap(), o).unwrap();

    let mut net = DocumentNetwork::new(params.latency_ms_per_request, vec![base.to_string()]);
    for (shape_iri, shape) in &shapes {
        net.insert_shape_doc(shape_iri.clone(), write_shapes(&[shape.clone()]));
    }

    for k in 0..n {
        let root = pod_root(k);
        let me = profile_subject(k);
        let all_docs: Vec<(usize, String)> = plan
            .iter()
            .enumerate()
            .flat_map(|(fi, f)| (0..f.count).map(move |i| (fi, doc_iri(k, f, i))))
            .collect();

        for (fi, family) in plan.iter().enumerate() {
            // Which neighbor pods this family's doc i must reach: neighbor
            // j goes to doc (j mod count), so every family alone covers the
            // whole neighbor set.
            let cross = |i: usize| -> Vec<usize> {
                neighbors[k]
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| family.count > 0 && j % family.count == i)
                    .map(|(_, b)| *b)
                    .collect()
            };
            for i in 0..family.count {
                let this_doc = doc_iri(k, family, i);
                let mut triples: Vec<Triple> = Vec::new();
                match family.kind {
                    FamilyKind::Profile => {
                        triples.push(triple(
                            me.clone(),
                            RDF_TYPE,
                            iri(vocab::CLASS_PERSON.into()),
                        ));
                        triples.push(triple(
                            me.clone(),
                            vocab::NAME,
                            Term::literal(format!("Owner of pod{k}")),
                        ));
                        for b in &neighbors[k] {
                            triples.push(triple(me.clone(), vocab::KNOWS, profile_subject(*b)));
                        }
                        for (_, doc) in all_docs.iter().filter(|(_, d)| *d != this_doc) {
                            triples.push(triple(me.clone(), vocab::LINKS_TO, iri(doc.clone())));
                        }
                    }
                    FamilyKind::Post => {
                        let subject = iri(format!("{this_doc}#it"));
                        triples.push(triple(
                            subject.clone(),
                            RDF_TYPE,
                            iri(vocab::CLASS_POST.into()),
                        ));
                        triples.push(triple(
                            subject.clone(),
                            vocab::CONTENT,
                            Term::literal(format!("Post {i} from pod{k}")),
                        ));
                        triples.push(triple(subject.clone(), vocab::CREATOR, me.clone()));
                        if family.count > 1 {
                            let next = doc_iri(k, family, (i + 1) % family.count);
                            triples.push(triple(subject.clone(), vocab::LINKS_TO, iri(next)));
                        }
                        for b in cross(i) {
                            triples.push(triple(
                                subject.clone(),
                                vocab::LINKS_TO,
                                iri(doc_iri(b, family, 0)),
                            ));
                        }
                    }
                    FamilyKind::Comment => {
                        let subject = iri(format!("{this_doc}#it"));
                        triples.push(triple(
                            subject.clone(),
                            RDF_TYPE,
                            iri(vocab::CLASS_COMMENT.into()),
                        ));
                        triples.push(triple(
                            subject.clone(),
                            vocab::TEXT,
                            Term::literal(format!("Comment {i} from pod{k}")),
                        ));
                        triples.push(triple(subject.clone(), vocab::CREATOR, me.clone()));
                        if let Some(posts) = plan.iter().find(|f| f.kind == FamilyKind::Post) {
                            if posts.count > 0 {
                                let target = doc_iri(k, posts, i % posts.count);
                                triples.push(triple(
                                    subject.clone(),
                                    vocab::REPLY_OF,
                                    iri(format!("{target}#it")),
                                ));
                            }
                        }
                        if family.count > 1 {
                            let next = doc_iri(k, family, (i + 1) % family.count);
                            triples.push(triple(subject.clone(), vocab::LINKS_TO, iri(next)));
                        }
                        for b in cross(i) {
                            triples.push(triple(
                                subject.clone(),
                                vocab::LINKS_TO,
                                iri(doc_iri(b, family, 0)),
                            ));
                        }
                    }
                    FamilyKind::Settings => {
                        // Settings describe the pod owner, so the subject is
                        // the profile entity: joins across the profile and
                        // settings shapes share it.
                        triples.push(triple(
                            me.clone(),
                            vocab::THEME,
                            Term::literal(format!("theme-{k}-{i}")),
                        ));
                        triples.push(triple(
                            me.clone(),
                            vocab::LOCALE,
                            Term::literal(format!("locale-{k}-{i}")),
                        ));
                        if family.count > 1 {
                            let next = doc_iri(k, family, (i + 1) % family.count);
                            triples.push(triple(me.clone(), vocab::LINKS_TO, iri(next)));
                        }
                        for b in cross(i) {
                            triples.push(triple(
                                me.clone(),
                                vocab::LINKS_TO,
                                iri(doc_iri(b, family, 0)),
                            ));
                        }
                    }
                }
                let shape = &shapes[&family.spec.shape_iri];
                let report = validate_document(&triples, shape);
                assert!(
                    report.conformant,
                    "generated {this_doc} violates {}: {:?}",
                    shape.iri, report.violations
                );
                net.insert_document(this_doc, triples);
            }
            let _ = fi;
        }

        let omitted = omitted_family.get(&k).copied();
        let complete = omitted.is_none();
        let entries: Vec<ShapeIndexEntry> = plan
            .iter()
            .enumerate()
            .filter(|(fi, f)| f.count > 0 && Some(*fi) != omitted)
            .map(|(_, f)| ShapeIndexEntry {
                shape_iri: f.spec.shape_iri.clone(),
                resources: (0..f.count).map(|i| doc_iri(k, f, i)).collect(),
                prefixes: vec![],
            })
            .collect();
        let index = ShapeIndex::new(
            format!("{root}{}", super::SHAPE_INDEX_SUFFIX),
            vec![root.clone()],
            complete,
            entries,
        )
        .expect("generated index satisfies its invariants");
        let claimed: usize = all_docs
            .iter()
            .filter(|(_, d)| index.claiming_entry(d).is_some())
            .count();
        if complete {
            assert_eq!(claimed, all_docs.len(), "complete index must claim every document");
        } else {
            assert!(claimed < all_docs.len(), "incomplete index must leave a document unclaimed");
        }
        net.insert_shape_index(root.clone(), index);

        let mut type_index: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for f in &plan {
            if f.count == 0 {
                continue;
            }
            if let Some(class) = f.kind.class_iri() {
                type_index
                    .entry(class.to_string())
                    .or_default()
                    .extend((0..f.count).map(|i| doc_iri(k, f, i)));
            }
        }
        net.insert_type_index(root, type_index);
    }

    if n > 0 {
        let profile = plan
            .iter()
            .find(|f| f.kind == FamilyKind::Profile)
            .expect("profile family present");
        net.set_seeds(vec![doc_iri(0, profile, 0)]);
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_params() -> NetworkParams {
        NetworkParams {
            pod_count: 3,
            documents_per_pod: [
                ("post".to_string(), 4),
                ("comment".to_string(), 2),
                ("settings".to_string(), 2),
                ("profile".to_string(), 1),
            ]
            .into_iter()
            .collect(),
            families: default_families(),
            inter_pod_link_density: 0.5,
            latency_ms_per_request: 10,
            incomplete_index_fraction: 0.34,
            seed: 7,
        }
    }

    fn default_families() -> Vec<FamilySpec> {
        vec![
            FamilySpec {
                name: "profile".into(),
                shape_iri: format!("{DEFAULT_BASE}shapes/Profile"),
                path_prefix: String::new(),
            },
            FamilySpec {
                name: "post".into(),
                shape_iri: format!("{DEFAULT_BASE}shapes/Post"),
                path_prefix: "posts/".into(),
            },
            FamilySpec {
                name: "comment".into(),
                shape_iri: format!("{DEFAULT_BASE}shapes/Comment"),
                path_prefix: "comments/".into(),
            },
            FamilySpec {
                name: "settings".into(),
                shape_iri: format!("{DEFAULT_BASE}shapes/Settings"),
                path_prefix: "settings/".into(),
            },
        ]
    }

    #[test]
    fn single_pod_single_family_counts() {
        let params = NetworkParams {
            pod_count: 1,
            documents_per_pod: [("post".to_string(), 1)].into_iter().collect(),
            families: vec![FamilySpec {
                name: "post".into(),
                shape_iri: format!("{DEFAULT_BASE}shapes/Post"),
                path_prefix: "posts/".into(),
            }],
            inter_pod_link_density: 0.0,
            latency_ms_per_request: 5,
            incomplete_index_fraction: 0.0,
            seed: 1,
        };
        let net = generate_network(&params).unwrap();
        // One post document plus the implicit profile.
        assert_eq!(net.documents().len(), 2);
        assert_eq!(net.shape_indexes().len(), 1);
        assert_eq!(net.type_indexes().len(), 1);
        // Profile and post shapes are served.
        assert_eq!(net.shape_docs().len(), 2);
        assert_eq!(net.seeds().len(), 1);
    }

    #[test]
    fn same_seed_is_identical() {
        let params = small_params();
        let a = generate_network(&params).unwrap();
        let b = generate_network(&params).unwrap();
        assert!(a.content_eq(&b));
    }

    #[test]
    fn different_seed_changes_links() {
        let params = small_params();
        let mut other = params.clone();
        other.seed = 8;
        let a = generate_network(&params).unwrap();
        let b = generate_network(&other).unwrap();
        assert!(!a.content_eq(&b));
    }

    #[test]
    fn claimed_documents_validate_and_flags_are_honest() {
        let net = generate_network(&small_params()).unwrap();
        let mut shapes: BTreeMap<String, Shape> = BTreeMap::new();
        for (iri, text) in net.shape_docs() {
            let parsed = crate::shape::parse_shapes(text).unwrap();
            shapes.insert(iri.clone(), parsed.into_iter().next().unwrap());
        }
        let mut incomplete_seen = 0;
        for (root, index) in net.shape_indexes() {
            let pod_docs: Vec<&String> = net
                .documents()
                .keys()
                .filter(|d| d.starts_with(root))
                .collect();
            let claimed = pod_docs
                .iter()
                .filter(|d| index.claiming_entry(d).is_some())
                .count();
            if index.complete {
                assert_eq!(claimed, pod_docs.len());
            } else {
                incomplete_seen += 1;
                assert!(claimed < pod_docs.len());
            }
            for entry in &index.entries {
                let shape = &shapes[&entry.shape_iri];
                for resource in &entry.resources {
                    let doc = &net.documents()[resource];
                    assert!(validate_document(doc, shape).conformant, "{resource}");
                }
            }
        }
        // 0.34 of 3 pods rounds to one incomplete pod.
        assert_eq!(incomplete_seen, 1);
    }

    #[test]
    fn predicates_stay_inside_their_family() {
        // Characteristic predicates appear only in documents claimed by
        // their own family, and every document only uses predicates its
        // shape constrains.
        let net = generate_network(&small_params()).unwrap();
        let characteristic: BTreeMap<&str, &str> = [
            (vocab::NAME, "Profile"),
            (vocab::KNOWS, "Profile"),
            (vocab::CONTENT, "Post"),
            (vocab::TEXT, "Comment"),
            (vocab::REPLY_OF, "Comment"),
            (vocab::THEME, "Settings"),
            (vocab::LOCALE, "Settings"),
        ]
        .into_iter()
        .collect();
        for (doc_iri, triples) in net.documents() {
            let root = net
                .shape_indexes()
                .keys()
                .find(|r| doc_iri.starts_with(r.as_str()))
                .unwrap();
            // The index may omit a family, so classify by path instead.
            let family = if doc_iri.contains("/posts/") {
                "Post"
            } else if doc_iri.contains("/comments/") {
                "Comment"
            } else if doc_iri.contains("/settings/") {
                "Settings"
            } else {
                "Profile"
            };
            let _ = root;
            for t in triples {
                let p = t.predicate.as_iri().unwrap();
                if let Some(owner) = characteristic.get(p) {
                    assert_eq!(*owner, family, "{p} leaked into {doc_iri}");
                }
            }
        }
    }

    #[test]
    fn zero_pods_is_a_valid_empty_network() {
        let mut params = small_params();
        params.pod_count = 0;
        let net = generate_network(&params).unwrap();
        assert!(net.documents().is_empty());
        assert!(net.seeds().is_empty());
    }
}
