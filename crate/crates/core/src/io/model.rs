use std::fs;
use std::path::Path;

use super::{read_grid, write_grid};
use crate::pipeline::DefectModel;
use crate::{Error, Result};

const MAGIC: &str = "aip-defect-model 1";

/// Writes `defect.hdr`, `defect.coef` and `inverse.coef` into `dir`.
pub fn save_model(model: &DefectModel, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let (k, l) = model.truncation();
    let header = format!(
        "{MAGIC}\nepsilon {:.16e}\ntruncation {k} {l}\n",
        model.epsilon()
    );
    fs::write(dir.join("defect.hdr"), header)?;
    write_grid(model.grid(), dir.join("defect.coef"))?;
    write_grid(model.inverse(), dir.join("inverse.coef"))
}

pub fn load_model(dir: impl AsRef<Path>) -> Result<DefectModel> {
    let dir = dir.as_ref();
    let header = fs::read_to_string(dir.join("defect.hdr"))?;
    let mut lines = header.lines();
    if lines.next().map(str::trim) != Some(MAGIC) {
        return Err(Error::Format("defect.hdr has an unknown header".into()));
    }
    let mut epsilon = None;
    let mut truncation = None;
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["epsilon", v] => {
                epsilon = Some(v.parse::<f64>().map_err(|_| {
                    Error::Format(format!("bad epsilon `{v}`"))
                })?)
            }
            ["truncation", k, l] => {
                let p = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Format(format!("bad truncation `{s}`")))
                };
                truncation = Some((p(k)?, p(l)?));
            }
            [] => {}
            _ => return Err(Error::Format(format!("unexpected header line `{line}`"))),
        }
    }
    let epsilon = epsilon.ok_or_else(|| Error::Format("header lacks epsilon".into()))?;
    let truncation = truncation.ok_or_else(|| Error::Format("header lacks truncation".into()))?;
    let grid = read_grid(dir.join("defect.coef"))?;
    let inverse = read_grid(dir.join("inverse.coef"))?;
    if (grid.k_max(), grid.l_max()) != truncation {
        return Err(Error::Format(
            "defect grid shape disagrees with the recorded truncation".into(),
        ));
    }
    DefectModel::from_parts(grid, inverse, epsilon)
}
