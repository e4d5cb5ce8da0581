use std::fs;

use bruhat_forge::cache::{KlCache, HEADER};
use bruhat_forge::hecke::kl_polynomial;
use bruhat_forge::weyl::lower_interval;
use bruhat_forge::{Element, Error, QPoly};

fn el(s: &str) -> Element {
    Element::parse(s).unwrap()
}

#[test]
fn save_then_load_reproduces_kl_answers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kl.txt");
    let tops = ["1234321", "0121021", "12341"];
    let mut cache = KlCache::new();
    for y in tops {
        cache.record_basis(&el(y)).unwrap();
    }
    assert_eq!(cache.save(&path).unwrap(), cache.len());

    let loaded = KlCache::load(&path).unwrap();
    assert_eq!(loaded.len(), cache.len());
    assert_eq!(loaded.preload(), tops.len());
    for y in tops.map(el) {
        for x in lower_interval(&y).iter() {
            let (_, p) = kl_polynomial(x, &y).unwrap();
            assert_eq!(loaded.get(x, &y), Some(&p));
        }
    }
}

#[test]
fn saving_appends_only_new_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kl.txt");
    let mut first = KlCache::new();
    first.record_basis(&el("1234")).unwrap();
    first.save(&path).unwrap();
    let before = fs::read_to_string(&path).unwrap();
    assert!(before.starts_with(HEADER));

    // same records again: nothing written
    assert_eq!(first.save(&path).unwrap(), 0);
    assert_eq!(fs::read_to_string(&path).unwrap(), before);

    let mut second = KlCache::new();
    second.record_basis(&el("1234")).unwrap();
    let added = second.record_basis(&el("01210")).unwrap();
    assert_eq!(second.save(&path).unwrap(), added);
    let after = fs::read_to_string(&path).unwrap();
    assert!(after.starts_with(&before));
    assert_eq!(after.matches(HEADER).count(), 1);
    assert_eq!(KlCache::load(&path).unwrap().len(), first.len() + added);
}

#[test]
fn disagreeing_file_is_left_alone() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kl.txt");
    fs::write(&path, format!("{HEADER}\ne 1201 1\n")).unwrap();
    let mut cache = KlCache::new();
    cache.insert(&Element::identity(), &el("1201"), QPoly::one_plus_q()).unwrap();
    assert!(matches!(cache.save(&path), Err(Error::Cache(_))));
    assert_eq!(fs::read_to_string(&path).unwrap(), format!("{HEADER}\ne 1201 1\n"));
}

#[test]
fn subsets_of_a_run_load() {
    let mut cache = KlCache::new();
    cache.record_basis(&el("1234321")).unwrap();
    let text = cache.to_text();
    let partial: Vec<&str> = text.lines().take(10).collect();
    let loaded = KlCache::parse(&partial.join("\n")).unwrap();
    assert_eq!(loaded.len(), 9);
    // an incomplete lower interval is not used to seed the basis table
    assert_eq!(loaded.preload(), 0);
}

#[test]
fn missing_file_opens_empty() {
    let dir = tempfile::tempdir().unwrap();
    assert!(KlCache::open(&dir.path().join("absent.txt")).unwrap().is_empty());
    assert!(KlCache::load(&dir.path().join("absent.txt")).is_err());
}
