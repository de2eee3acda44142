//! Dataset fetching: downloads manifest-listed edge lists into a local cache.
//!
//! Manifest format, one entry per line:
//!
//! ```text
//! email-Enron  https://snap.stanford.edu/data/email-Enron.txt.gz  undirected
//! wiki-Vote    https://snap.stanford.edu/data/wiki-Vote.txt.gz    directed
//! ```
//!
//! `.gz` payloads are decompressed on the way in. Cached files are never
//! re-downloaded. The cache directory resolves to `--cache-dir`, then the
//! `CENTRA_CACHE_DIR` environment variable, then `./cache`.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use centra::{Error, Result};

use crate::FetchArgs;

#[derive(Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub name: String,
    pub url: String,
    pub directed: bool,
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: "expected `name url directedness`".into(),
            });
        }
        let directed = match fields[2] {
            "directed" => true,
            "undirected" => false,
            other => {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("directedness must be directed|undirected, got {other:?}"),
                })
            }
        };
        entries.push(ManifestEntry {
            name: fields[0].to_string(),
            url: fields[1].to_string(),
            directed,
        });
    }
    Ok(entries)
}

pub fn cache_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("CENTRA_CACHE_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("cache"))
}

pub fn run(args: FetchArgs) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&args.manifest)?;
    let entries = parse_manifest(&text)?;
    if entries.is_empty() {
        println!("manifest lists no datasets; nothing to do");
        return Ok(ExitCode::SUCCESS);
    }
    let dir = cache_dir(args.cache_dir);
    std::fs::create_dir_all(&dir)?;
    for entry in &entries {
        let target = dir.join(format!("{}.txt", entry.name));
        if target.exists() {
            println!("{}: cached at {}", entry.name, target.display());
            continue;
        }
        println!("{}: downloading {}", entry.name, entry.url);
        let bytes = download(&entry.url)?;
        let bytes = if entry.url.ends_with(".gz") {
            let mut decoder = flate2::read::GzDecoder::new(bytes.as_slice());
            let mut out = Vec::new();
            decoder.read_to_end(&mut out)?;
            out
        } else {
            bytes
        };
        std::fs::write(&target, &bytes)?;
        println!(
            "{}: wrote {} bytes to {} ({})",
            entry.name,
            bytes.len(),
            target.display(),
            if entry.directed { "directed" } else { "undirected" },
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn download(url: &str) -> Result<Vec<u8>> {
    let response = ureq::get(url)
        .call()
        .map_err(|e| Error::Io(std::io::Error::other(format!("GET {url}: {e}"))))?;
    let mut reader = response.into_body().into_reader();
    let mut bytes = Vec::new();
    reader
        .read_to_end(&mut bytes)
        .map_err(|e| Error::Io(std::io::Error::other(format!("reading {url}: {e}"))))?;
    Ok(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parses_triples_and_comments() {
        let text = "# graphs\nemail-Enron http://x/y.txt.gz undirected\nwiki-Vote http://x/z.txt directed\n";
        let entries = parse_manifest(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert!(!entries[0].directed);
        assert!(entries[1].directed);
        assert_eq!(entries[0].name, "email-Enron");
    }

    #[test]
    fn manifest_rejects_bad_lines() {
        assert!(parse_manifest("name url\n").is_err());
        assert!(parse_manifest("name url sideways\n").is_err());
        assert!(parse_manifest("").unwrap().is_empty());
    }
}
