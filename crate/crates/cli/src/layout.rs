use std::fs;
use std::path::{Path, PathBuf};

use rootcite::SourceFormat;

use crate::error::CliError;

pub const STORE_FILE: &str = "store.jsonl";
pub const OUT_DIR: &str = "out";

/// On-disk project: `data_cssci/`, `data_wos/`, `out/` and the record store.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectLayout {
    pub root: PathBuf,
}

impl ProjectLayout {
    pub fn data_dir(&self, format: SourceFormat) -> PathBuf {
        self.root.join(format!("data_{}", format.tag()))
    }

    pub fn out_dir(&self) -> PathBuf {
        self.root.join(OUT_DIR)
    }

    pub fn store_path(&self) -> PathBuf {
        self.root.join(STORE_FILE)
    }

    fn subdirs(&self) -> [PathBuf; 3] {
        [self.data_dir(SourceFormat::Cssci), self.data_dir(SourceFormat::Wos), self.out_dir()]
    }

    /// Creates the skeleton under `root`. Existing directories are left alone.
    pub fn create(root: &Path) -> Result<Self, CliError> {
        if root.is_file() {
            return Err(CliError::PathIsFile(root.to_owned()));
        }
        let layout = ProjectLayout { root: root.to_owned() };
        for dir in layout.subdirs() {
            if dir.is_file() {
                return Err(CliError::PathIsFile(dir));
            }
            fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        }
        Ok(layout)
    }

    pub fn open(root: &Path) -> Result<Self, CliError> {
        let layout = ProjectLayout { root: root.to_owned() };
        if layout.subdirs().iter().all(|d| d.is_dir()) {
            Ok(layout)
        } else {
            Err(CliError::LayoutMissing(root.to_owned()))
        }
    }
}
