use alloc::collections::BTreeMap;

/// Least-recently-used cache over ordered keys.
#[derive(Debug, Clone)]
pub struct LruCache<K: Ord + Clone, V: Clone> {
    cap: usize,
    tick: u64,
    map: BTreeMap<K, (V, u64)>,
    order: BTreeMap<u64, K>,
}

impl<K: Ord + Clone, V: Clone> LruCache<K, V> {
    pub fn new(cap: usize) -> Self {
        LruCache {
            cap: cap.max(1),
            tick: 0,
            map: BTreeMap::new(),
            order: BTreeMap::new(),
        }
    }

    pub fn get(&mut self, k: &K) -> Option<V> {
        let (v, t) = self.map.get_mut(k)?;
        self.order.remove(t);
        self.tick += 1;
        *t = self.tick;
        self.order.insert(self.tick, k.clone());
        Some(v.clone())
    }

    pub fn insert(&mut self, k: K, v: V) {
        if let Some((_, t)) = self.map.remove(&k) {
            self.order.remove(&t);
        }
        while self.map.len() >= self.cap {
            let Some((_, old)) = self.order.pop_first() else {
                break;
            };
            self.map.remove(&old);
        }
        self.tick += 1;
        self.order.insert(self.tick, k.clone());
        self.map.insert(k, (v, self.tick));
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn clear(&mut self) {
        self.map.clear();
        self.order.clear();
    }
}
