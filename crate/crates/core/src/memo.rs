use std::collections::BTreeMap;
use std::sync::RwLock;

/// Thread-safe memo table. Values are computed outside the lock; racing writers store equal values.
pub(crate) struct Memo<K, V>(RwLock<BTreeMap<K, V>>);

impl<K: Ord + Clone, V: Clone> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo(RwLock::new(BTreeMap::new()))
    }

    pub(crate) fn get_or_insert_with(&self, key: &K, f: impl FnOnce() -> V) -> V {
        if let Some(v) = self.0.read().expect("memo poisoned").get(key) {
            return v.clone();
        }
        let v = f();
        self.0.write().expect("memo poisoned").entry(key.clone()).or_insert(v).clone()
    }

    pub(crate) fn try_get_or_insert_with<E>(&self, key: &K, f: impl FnOnce() -> Result<V, E>) -> Result<V, E> {
        if let Some(v) = self.0.read().expect("memo poisoned").get(key) {
            return Ok(v.clone());
        }
        let v = f()?;
        Ok(self.0.write().expect("memo poisoned").entry(key.clone()).or_insert(v).clone())
    }
}
