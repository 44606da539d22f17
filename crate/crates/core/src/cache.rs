//! Append-only on-disk store of e-coefficient tables.
//!
//! One JSON object per line:
//! `{"n":3,"lhs":[2,1],"rhs":[1],"terms":{"3,1":2,"2,1,1":1}}`, keys of
//! `terms` being comma-separated parts ("" for the empty partition).

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

const FILE_NAME: &str = "e_coeffs.jsonl";

#[derive(Serialize, Deserialize)]
struct Record {
    n: usize,
    lhs: Partition,
    rhs: Partition,
    terms: BTreeMap<String, serde_json::Number>,
}

type Key = (usize, Partition, Partition);

pub struct DiskStore {
    path: PathBuf,
    entries: Mutex<HashMap<Key, BTreeMap<Partition, BigInt>>>,
    file: Mutex<File>,
}

impl DiskStore {
    /// Opens (creating if needed) the store in `dir` and loads its records.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(FILE_NAME);
        let mut entries = HashMap::new();
        if path.exists() {
            let f = File::open(&path).map_err(|e| Error::io(&path, e))?;
            for (lineno, line) in BufReader::new(f).lines().enumerate() {
                let line = line.map_err(|e| Error::io(&path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let (key, terms) = parse_record(&line).map_err(|msg| {
                    Error::Parse(format!("{}:{}: {msg}", path.display(), lineno + 1))
                })?;
                entries.insert(key, terms);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        Ok(DiskStore {
            path,
            entries: Mutex::new(entries),
            file: Mutex::new(file),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, n: usize, lhs: &Partition, rhs: &Partition) -> Option<BTreeMap<Partition, BigInt>> {
        self.entries
            .lock()
            .unwrap()
            .get(&(n, lhs.clone(), rhs.clone()))
            .cloned()
    }

    pub fn put(
        &self,
        n: usize,
        lhs: &Partition,
        rhs: &Partition,
        terms: &BTreeMap<Partition, BigInt>,
    ) -> Result<()> {
        let key = (n, lhs.clone(), rhs.clone());
        {
            let mut entries = self.entries.lock().unwrap();
            if entries.contains_key(&key) {
                return Ok(());
            }
            entries.insert(key, terms.clone());
        }
        let record = Record {
            n,
            lhs: lhs.clone(),
            rhs: rhs.clone(),
            terms: terms
                .iter()
                .map(|(nu, c)| {
                    let num = serde_json::Number::from_str(&c.to_string())
                        .expect("integers are valid JSON numbers");
                    (nu.to_csv(), num)
                })
                .collect(),
        };
        let mut line = serde_json::to_string(&record).expect("record serializes");
        line.push('\n');
        let mut file = self.file.lock().unwrap();
        file.write_all(line.as_bytes()).map_err(|e| Error::io(&self.path, e))?;
        file.flush().map_err(|e| Error::io(&self.path, e))
    }
}

fn parse_record(line: &str) -> std::result::Result<(Key, BTreeMap<Partition, BigInt>), String> {
    let rec: Record = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let mut terms = BTreeMap::new();
    for (k, v) in rec.terms {
        let nu = if k.is_empty() {
            Partition::empty()
        } else {
            let parts = k
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|e| format!("{k:?}: {e}")))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            Partition::new(parts).map_err(|e| e.to_string())?
        };
        let c = BigInt::from_str(&v.to_string()).map_err(|e| format!("{v}: {e}"))?;
        terms.insert(nu, c);
    }
    Ok(((rec.n, rec.lhs, rec.rhs), terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn round_trips_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let big: BigInt = BigInt::from(1u8) << 100;
        let terms: BTreeMap<Partition, BigInt> =
            [(p(&[3, 1]), big.clone()), (p(&[]), BigInt::from(-2))].into();
        {
            let store = DiskStore::open(dir.path()).unwrap();
            assert!(store.is_empty());
            store.put(3, &p(&[2]), &p(&[1]), &terms).unwrap();
            store.put(3, &p(&[2]), &p(&[1]), &terms).unwrap();
        }
        let store = DiskStore::open(dir.path()).unwrap();
        assert_eq!(store.len(), 1);
        assert_eq!(store.get(3, &p(&[2]), &p(&[1])).unwrap(), terms);
        assert!(store.get(4, &p(&[2]), &p(&[1])).is_none());
        let text = std::fs::read_to_string(store.path()).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert!(text.contains(&big.to_string()));
    }

    #[test]
    fn malformed_lines_report_the_path() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join(FILE_NAME), "{not json}\n").unwrap();
        let err = DiskStore::open(dir.path()).err().unwrap();
        assert!(err.to_string().contains(FILE_NAME), "{err}");
    }
}
