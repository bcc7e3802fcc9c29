//! Fixture directories: a manifest plus one file per resource.
//!
//! Layout: `manifest.json` maps every IRI to a relative path; documents are
//! `.nt`, shape indexes and type indexes `.json`, shapes `.shex`. Loading
//! verifies the manifest is closed: no dangling entries, no undeclared
//! files. The request log always starts empty after a load.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rdf::ntriples;
use crate::shape::{index::parse_shape_index, parse_shapes};

use super::{DocumentNetwork, SHAPE_INDEX_SUFFIX, TYPE_INDEX_SUFFIX};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("missing manifest.json in {0}")]
    MissingManifest(PathBuf),
    #[error("manifest is not valid JSON: {0}")]
    Manifest(String),
    #[error("manifest entry {iri} points at missing file {path}")]
    Dangling { iri: String, path: String },
    #[error("file {0} is not declared in the manifest")]
    Undeclared(String),
    #[error("two resources map to the same file {0}")]
    PathCollision(String),
    #[error("cannot parse {iri}: {msg}")]
    Parse { iri: String, msg: String },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct Manifest {
    allowlist: Vec<String>,
    seeds: Vec<String>,
    latency_ms: u64,
    resources: BTreeMap<String, String>,
}

pub fn save_fixture(net: &DocumentNetwork, dir: &Path) -> Result<(), FixtureError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source: std::io::Error| FixtureError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;

    let mut resources: BTreeMap<String, String> = BTreeMap::new();
    let mut files: BTreeMap<String, String> = BTreeMap::new();
    let mut add = |iri: String, rel: String, content: String| -> Result<(), FixtureError> {
        if files.contains_key(&rel) {
            return Err(FixtureError::PathCollision(rel));
        }
        files.insert(rel.clone(), content);
        resources.insert(iri, rel);
        Ok(())
    };

    for (iri, triples) in net.documents() {
        add(
            iri.clone(),
            relative_path(iri, ".nt"),
            ntriples::serialize(triples),
        )?;
    }
    for (root, index) in net.shape_indexes() {
        let iri = format!("{root}{SHAPE_INDEX_SUFFIX}");
        add(iri.clone(), relative_path(&iri, ""), index.to_json())?;
    }
    for (root, index) in net.type_indexes() {
        let iri = format!("{root}{TYPE_INDEX_SUFFIX}");
        let mut text = serde_json::to_string_pretty(index).expect("type index serializes");
        text.push('\n');
        add(iri.clone(), relative_path(&iri, ""), text)?;
    }
    for (iri, text) in net.shape_docs() {
        add(iri.clone(), relative_path(iri, ".shex"), text.clone())?;
    }

    for (rel, content) in &files {
        let path = dir.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(io(parent))?;
        }
        fs::write(&path, content).map_err(io(&path))?;
    }
    let manifest = Manifest {
        allowlist: net.allowlist().to_vec(),
        seeds: net.seeds().to_vec(),
        latency_ms: net.latency_ms(),
        resources,
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    let manifest_path = dir.join("manifest.json");
    fs::write(&manifest_path, text).map_err(io(&manifest_path))?;
    Ok(())
}

pub fn load_fixture(dir: &Path) -> Result<DocumentNetwork, FixtureError> {
    let manifest_path = dir.join("manifest.json");
    if !manifest_path.is_file() {
        return Err(FixtureError::MissingManifest(dir.to_path_buf()));
    }
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source: std::io::Error| FixtureError::Io { path, source }
    };
    let text = fs::read_to_string(&manifest_path).map_err(io(&manifest_path))?;
    let manifest: Manifest =
        serde_json::from_str(&text).map_err(|e| FixtureError::Manifest(e.to_string()))?;

    // The manifest must describe exactly the files on disk.
    let mut on_disk = Vec::new();
    collect_files(dir, dir, &mut on_disk)?;
    for rel in &on_disk {
        if rel != "manifest.json" && !manifest.resources.values().any(|v| v == rel) {
            return Err(FixtureError::Undeclared(rel.clone()));
        }
    }

    let mut net = DocumentNetwork::new(manifest.latency_ms, manifest.allowlist);
    net.set_seeds(manifest.seeds);
    for (iri, rel) in &manifest.resources {
        let path = dir.join(rel);
        if !path.is_file() {
            return Err(FixtureError::Dangling {
                iri: iri.clone(),
                path: rel.clone(),
            });
        }
        let content = fs::read_to_string(&path).map_err(io(&path))?;
        let parse_err = |msg: String| FixtureError::Parse {
            iri: iri.clone(),
            msg,
        };
        if let Some(root) = iri.strip_suffix(SHAPE_INDEX_SUFFIX) {
            let index = parse_shape_index(&content, iri).map_err(|e| parse_err(e.to_string()))?;
            net.insert_shape_index(root, index);
        } else if let Some(root) = iri.strip_suffix(TYPE_INDEX_SUFFIX) {
            let index: BTreeMap<String, Vec<String>> =
                serde_json::from_str(&content).map_err(|e| parse_err(e.to_string()))?;
            net.insert_type_index(root, index);
        } else if rel.ends_with(".nt") {
            let triples = ntriples::parse(&content).map_err(|e| parse_err(e.to_string()))?;
            net.insert_document(iri.clone(), triples);
        } else if rel.ends_with(".shex") {
            parse_shapes(&content).map_err(|e| parse_err(e.to_string()))?;
            net.insert_shape_doc(iri.clone(), content);
        } else {
            return Err(parse_err(format!("unrecognized resource file {rel}")));
        }
    }
    Ok(net)
}

fn collect_files(root: &Path, dir: &Path, out: &mut Vec<String>) -> Result<(), FixtureError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source: std::io::Error| FixtureError::Io { path, source }
    };
    for entry in fs::read_dir(dir).map_err(io(dir))? {
        let entry = entry.map_err(io(dir))?;
        let path = entry.path();
        if path.is_dir() {
            collect_files(root, &path, out)?;
        } else {
            let rel = path
                .strip_prefix(root)
                .expect("path under fixture root")
                .components()
                .map(|c| c.as_os_str().to_string_lossy())
                .collect::<Vec<_>>()
                .join("/");
            out.push(rel);
        }
    }
    out.sort();
    Ok(())
}

/// Maps an IRI to a stable relative path: scheme separator dropped, odd
/// characters replaced, traversal segments defused.
fn relative_path(iri: &str, ext: &str) -> String {
    let trimmed = iri.split_once("://").map(|(_, rest)| rest).unwrap_or(iri);
    let sanitized: String = trimmed
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '/' | '.' | '_' | '-') {
                c
            } else {
                '_'
            }
        })
        .collect();
    let safe = sanitized
        .split('/')
        .filter(|s| !s.is_empty())
        .map(|s| if s == "." || s == ".." { "_" } else { s })
        .collect::<Vec<_>>()
        .join("/");
    format!("{safe}{ext}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netsim::{generate_network, FamilySpec, NetworkParams, DEFAULT_BASE};

    fn two_pod_params() -> NetworkParams {
        NetworkParams {
            pod_count: 2,
            documents_per_pod: [("post".to_string(), 2), ("settings".to_string(), 1)]
                .into_iter()
                .collect(),
            families: vec![
                FamilySpec {
                    name: "post".into(),
                    shape_iri: format!("{DEFAULT_BASE}shapes/Post"),
                    path_prefix: "posts/".into(),
                },
                FamilySpec {
                    name: "settings".into(),
                    shape_iri: format!("{DEFAULT_BASE}shapes/Settings"),
                    path_prefix: "settings/".into(),
                },
            ],
            inter_pod_link_density: 1.0,
            latency_ms_per_request: 10,
            incomplete_index_fraction: 0.0,
            seed: 11,
        }
    }

    #[test]
    fn round_trip_preserves_content() {
        let net = generate_network(&two_pod_params()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        save_fixture(&net, dir.path()).unwrap();
        let loaded = load_fixture(dir.path()).unwrap();
        assert!(loaded.content_eq(&net));
        assert!(loaded.request_log().is_empty());
    }

    #[test]
    fn save_is_byte_deterministic() {
        let net = generate_network(&two_pod_params()).unwrap();
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        save_fixture(&net, a.path()).unwrap();
        save_fixture(&net, b.path()).unwrap();
        let mut files_a = Vec::new();
        collect_files(a.path(), a.path(), &mut files_a).unwrap();
        let mut files_b = Vec::new();
        collect_files(b.path(), b.path(), &mut files_b).unwrap();
        assert_eq!(files_a, files_b);
        for rel in files_a {
            let ca = fs::read(a.path().join(&rel)).unwrap();
            let cb = fs::read(b.path().join(&rel)).unwrap();
            assert_eq!(ca, cb, "{rel} differs");
        }
    }

    #[test]
    fn dangling_manifest_entry_is_an_integrity_error() {
        let net = generate_network(&two_pod_params()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        save_fixture(&net, dir.path()).unwrap();
        // Remove a declared file.
        let manifest: Manifest = serde_json::from_str(
            &fs::read_to_string(dir.path().join("manifest.json")).unwrap(),
        )
        .unwrap();
        let victim = manifest.resources.values().next().unwrap();
        fs::remove_file(dir.path().join(victim)).unwrap();
        assert!(matches!(
            load_fixture(dir.path()),
            Err(FixtureError::Dangling { .. })
        ));
    }

    #[test]
    fn undeclared_file_is_an_integrity_error() {
        let net = generate_network(&two_pod_params()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        save_fixture(&net, dir.path()).unwrap();
        fs::write(dir.path().join("stray.nt"), "").unwrap();
        assert!(matches!(
            load_fixture(dir.path()),
            Err(FixtureError::Undeclared(_))
        ));
    }

    #[test]
    fn missing_manifest_is_an_integrity_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_fixture(dir.path()),
            Err(FixtureError::MissingManifest(_))
        ));
    }

    #[test]
    fn hand_authored_minimal_fixture_loads() {
        let dir = tempfile::tempdir().unwrap();
        fs::create_dir_all(dir.path().join("ex.org/pods/pod0")).unwrap();
        fs::write(
            dir.path().join("ex.org/pods/pod0/doc.nt"),
            "<http://ex.org/pods/pod0/doc#it> <http://vocab.example/ns#content> \"hi\" .\n",
        )
        .unwrap();
        fs::write(
            dir.path().join("ex.org/pods/pod0/shape-index.json"),
            r#"{"domain": ["http://ex.org/pods/pod0/"], "complete": true,
                "entries": [{"shape": "http://ex.org/shapes/Post",
                             "resources": ["http://ex.org/pods/pod0/doc"],
                             "prefixes": []}]}"#,
        )
        .unwrap();
        fs::write(
            dir.path().join("manifest.json"),
            r#"{
              "allowlist": ["http://ex.org/"],
              "seeds": ["http://ex.org/pods/pod0/doc"],
              "latencyMs": 5,
              "resources": {
                "http://ex.org/pods/pod0/doc": "ex.org/pods/pod0/doc.nt",
                "http://ex.org/pods/pod0/shape-index.json": "ex.org/pods/pod0/shape-index.json"
              }
            }"#,
        )
        .unwrap();
        let net = load_fixture(dir.path()).unwrap();
        assert_eq!(net.documents().len(), 1);
        assert_eq!(net.shape_indexes().len(), 1);
        assert_eq!(net.latency_ms(), 5);
    }
}
