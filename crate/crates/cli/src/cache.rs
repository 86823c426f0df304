//! On-disk cache of structure constants and Dynkin generators, keyed by (type, form).

use std::fs;
use std::path::{Path, PathBuf};

use cliffhc_core::lie_core::{build_algebra, CartanType, FormChoice, LieAlgebra};
use cliffhc_core::symmetric::{dynkin_space, invariant_generators, SymPolynomial};
use cliffhc_core::verify::form_name;
use cliffhc_core::{Error, Result, Q};
use serde_json::{json, Value};

const GENERATOR_SCHEMA: &str = "cliffhc-generators/1";

pub struct Cache {
    dir: PathBuf,
}

pub struct Entry {
    pub algebra: LieAlgebra,
    pub generators: Vec<SymPolynomial>,
}

fn key(ty: &CartanType, form: FormChoice) -> String {
    format!("{}_{}", ty.to_string().replace('+', "-"), form_name(form))
}

fn generators_json(g: &LieAlgebra, gens: &[SymPolynomial]) -> String {
    let v = json!({
        "schema": GENERATOR_SCHEMA,
        "type": g.cartan_type.to_string(),
        "form": form_name(g.form_choice),
        "nvars": g.dim(),
        "generators": gens.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
    });
    serde_json::to_string(&v).expect("generators serialize")
}

fn parse_generators(g: &LieAlgebra, text: &str) -> Result<Vec<SymPolynomial>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if v["schema"] != GENERATOR_SCHEMA
        || v["type"] != g.cartan_type.to_string().as_str()
        || v["form"] != form_name(g.form_choice)
        || v["nvars"] != g.dim()
    {
        return Err(Error::Parse("generator cache header mismatch".into()));
    }
    let raw: Vec<Vec<(Vec<u8>, Q)>> =
        serde_json::from_value(v["generators"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = Vec::new();
    for terms in raw {
        if terms.iter().any(|(e, _)| e.len() != g.dim()) {
            return Err(Error::Parse("generator exponent width".into()));
        }
        out.push(SymPolynomial::from_terms(g.dim(), terms));
    }
    if out.len() != g.rank() {
        return Err(Error::Parse("generator count".into()));
    }
    Ok(out)
}

pub fn fresh(ty: &CartanType, form: FormChoice) -> Result<Entry> {
    let algebra = build_algebra(ty, form)?;
    let generators = dynkin_space(&algebra, &invariant_generators(&algebra)?)?;
    Ok(Entry { algebra, generators })
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    fn paths(&self, ty: &CartanType, form: FormChoice) -> (PathBuf, PathBuf) {
        let k = key(ty, form);
        (self.dir.join(format!("{k}.algebra.json")), self.dir.join(format!("{k}.generators.json")))
    }

    fn read(&self, ty: &CartanType, form: FormChoice) -> Result<Entry> {
        let (pa, pg) = self.paths(ty, form);
        let ta = fs::read_to_string(&pa).map_err(|e| Error::Parse(format!("{}: {e}", pa.display())))?;
        let algebra = LieAlgebra::from_json(&ta)?;
        if algebra.cartan_type != *ty || algebra.form_choice != form {
            return Err(Error::Parse("algebra cache keyed to another type or form".into()));
        }
        let tg = fs::read_to_string(&pg).map_err(|e| Error::Parse(format!("{}: {e}", pg.display())))?;
        let generators = parse_generators(&algebra, &tg)?;
        Ok(Entry { algebra, generators })
    }

    fn write(&self, e: &Entry) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let (pa, pg) = self.paths(&e.algebra.cartan_type, e.algebra.form_choice);
        fs::write(pa, e.algebra.to_json())?;
        fs::write(pg, generators_json(&e.algebra, &e.generators))
    }

    /// Load an entry; missing entries are built, unreadable ones rebuilt with a warning.
    pub fn load_or_build(&self, ty: &CartanType, form: FormChoice) -> Result<Entry> {
        let (pa, pg) = self.paths(ty, form);
        if pa.exists() || pg.exists() {
            match self.read(ty, form) {
                Ok(e) => return Ok(e),
                Err(err) => eprintln!("warning: corrupt cache entry {} ({err}); rebuilding", key(ty, form)),
            }
        }
        self.build(ty, form)
    }

    pub fn build(&self, ty: &CartanType, form: FormChoice) -> Result<Entry> {
        let e = fresh(ty, form)?;
        self.write(&e).map_err(|err| Error::Parse(format!("cannot write cache: {err}")))?;
        Ok(e)
    }

    /// Cached entries as (type, form) pairs, sorted.
    pub fn list(&self) -> Vec<(String, String)> {
        let Ok(rd) = fs::read_dir(&self.dir) else { return Vec::new() };
        let mut out: Vec<(String, String)> = rd
            .filter_map(|e| e.ok())
            .filter_map(|e| e.file_name().to_str().and_then(|n| n.strip_suffix(".algebra.json").map(str::to_owned)))
            .filter_map(|k| k.rsplit_once('_').map(|(t, f)| (t.replace('-', "+"), f.to_owned())))
            .collect();
        out.sort();
        out
    }

    pub fn clear(&self) -> std::io::Result<usize> {
        let Ok(rd) = fs::read_dir(&self.dir) else { return Ok(0) };
        let mut n = 0;
        for e in rd.filter_map(|e| e.ok()) {
            let name = e.file_name();
            let name = name.to_string_lossy();
            if name.ends_with(".algebra.json") || name.ends_with(".generators.json") {
                fs::remove_file(e.path())?;
                n += 1;
            }
        }
        Ok(n)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}
