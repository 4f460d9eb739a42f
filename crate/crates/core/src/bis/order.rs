//! Order maintenance: a linked list that answers "does `x` come before
//! `y`?" in constant time.
//!
//! Two-level labelling. Elements live in groups of at most `GROUP_MAX`, with
//! 32-bit local labels; groups carry 64-bit labels kept sparse by relabelling
//! the smallest enclosing label range that is not too crowded.

use std::cmp::Ordering;

pub type ElemId = u32;

const GROUP_MAX: usize = 64;
const LOCAL_SPACE: u64 = 1 << 32;

#[derive(Debug, Clone)]
struct Elem {
    group: u32,
    label: u64,
    prev: Option<ElemId>,
    next: Option<ElemId>,
    payload: u64,
}

#[derive(Debug, Clone)]
struct Group {
    label: u64,
    first: ElemId,
    last: ElemId,
    size: usize,
    prev: Option<u32>,
    next: Option<u32>,
}

#[derive(Debug, Clone, Default)]
pub struct OrderList {
    elems: Vec<Elem>,
    groups: Vec<Group>,
    head: Option<ElemId>,
    relabels: u64,
}

impl OrderList {
    pub fn new() -> OrderList {
        OrderList::default()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements touched by relabelling so far.
    pub fn relabels(&self) -> u64 {
        self.relabels
    }

    pub fn first(&self) -> Option<ElemId> {
        self.head
    }

    pub fn next(&self, x: ElemId) -> Option<ElemId> {
        self.elems[x as usize].next
    }

    pub fn prev(&self, x: ElemId) -> Option<ElemId> {
        self.elems[x as usize].prev
    }

    pub fn payload(&self, x: ElemId) -> u64 {
        self.elems[x as usize].payload
    }

    /// `(group label, local label)`; compares like the list order.
    #[inline]
    pub fn key(&self, x: ElemId) -> (u64, u64) {
        let e = &self.elems[x as usize];
        (self.groups[e.group as usize].label, e.label)
    }

    #[inline]
    pub fn cmp(&self, x: ElemId, y: ElemId) -> Ordering {
        self.key(x).cmp(&self.key(y))
    }

    pub fn iter(&self) -> impl Iterator<Item = ElemId> + '_ {
        std::iter::successors(self.head, move |&x| self.next(x))
    }

    /// Starts the list. Panics if it is not empty.
    pub fn push_first(&mut self, payload: u64) -> ElemId {
        assert!(self.elems.is_empty());
        self.groups.push(Group {
            label: 1 << 63,
            first: 0,
            last: 0,
            size: 1,
            prev: None,
            next: None,
        });
        self.elems.push(Elem {
            group: 0,
            label: LOCAL_SPACE / 2,
            prev: None,
            next: None,
            payload,
        });
        self.head = Some(0);
        0
    }

    pub fn insert_after(&mut self, x: ElemId, payload: u64) -> ElemId {
        self.insert(Some(x), self.elems[x as usize].next, payload)
    }

    pub fn insert_before(&mut self, x: ElemId, payload: u64) -> ElemId {
        self.insert(self.elems[x as usize].prev, Some(x), payload)
    }

    fn insert(&mut self, before: Option<ElemId>, after: Option<ElemId>, payload: u64) -> ElemId {
        // the new element joins the group of a neighbour
        let anchor = before.or(after).expect("list is empty");
        if self.groups[self.elems[anchor as usize].group as usize].size >= GROUP_MAX {
            self.split_group(self.elems[anchor as usize].group);
        }
        let g = self.elems[anchor as usize].group;
        let lo = match before {
            Some(b) if self.elems[b as usize].group == g => self.elems[b as usize].label,
            _ => 0,
        };
        let hi = match after {
            Some(a) if self.elems[a as usize].group == g => self.elems[a as usize].label,
            _ => LOCAL_SPACE,
        };
        let id = self.elems.len() as ElemId;
        self.elems.push(Elem {
            group: g,
            label: 0,
            prev: before,
            next: after,
            payload,
        });
        match before {
            Some(b) => self.elems[b as usize].next = Some(id),
            None => self.head = Some(id),
        }
        if let Some(a) = after {
            self.elems[a as usize].prev = Some(id);
        }
        let group = &mut self.groups[g as usize];
        group.size += 1;
        if before.is_none_or(|b| self.elems[b as usize].group != g) {
            group.first = id;
        }
        if after.is_none_or(|a| self.elems[a as usize].group != g) {
            group.last = id;
        }
        if hi - lo >= 2 {
            self.elems[id as usize].label = lo + (hi - lo) / 2;
        } else {
            self.relabel_group(g);
        }
        id
    }

    fn group_members(&self, g: u32) -> Vec<ElemId> {
        let group = &self.groups[g as usize];
        let mut out = Vec::with_capacity(group.size);
        let mut x = group.first;
        loop {
            out.push(x);
            if x == group.last {
                break;
            }
            x = self.elems[x as usize].next.unwrap();
        }
        out
    }

    fn relabel_group(&mut self, g: u32) {
        let members = self.group_members(g);
        let step = LOCAL_SPACE / (members.len() as u64 + 1);
        for (i, &x) in members.iter().enumerate() {
            self.elems[x as usize].label = step * (i as u64 + 1);
        }
        self.relabels += members.len() as u64;
    }

    fn split_group(&mut self, g: u32) {
        let members = self.group_members(g);
        let half = members.len() / 2;
        let g2 = self.insert_group_after(g);
        {
            let group = &mut self.groups[g as usize];
            group.last = members[half - 1];
            group.size = half;
        }
        {
            let group = &mut self.groups[g2 as usize];
            group.first = members[half];
            group.last = *members.last().unwrap();
            group.size = members.len() - half;
        }
        for &x in &members[half..] {
            self.elems[x as usize].group = g2;
        }
        self.relabel_group(g);
        self.relabel_group(g2);
    }

    /// New empty group right after `g` in the top-level order.
    fn insert_group_after(&mut self, g: u32) -> u32 {
        let id = self.groups.len() as u32;
        let next = self.groups[g as usize].next;
        self.groups.push(Group {
            label: 0,
            first: 0,
            last: 0,
            size: 0,
            prev: Some(g),
            next,
        });
        self.groups[g as usize].next = Some(id);
        if let Some(nx) = next {
            self.groups[nx as usize].prev = Some(id);
        }
        let lo = self.groups[g as usize].label;
        let hi = next.map_or(u64::MAX, |nx| self.groups[nx as usize].label);
        if hi - lo >= 2 {
            self.groups[id as usize].label = lo + (hi - lo) / 2;
        } else {
            self.relabel_top(g);
        }
        id
    }

    /// Spreads out the groups around `g` (whose successor is unlabelled)
    /// over the smallest aligned label range with enough room.
    fn relabel_top(&mut self, g: u32) {
        let base = self.groups[g as usize].label;
        for bits in 1..=64u32 {
            let (lo, hi) = if bits == 64 {
                (0, u64::MAX)
            } else {
                let lo = base & !((1u64 << bits) - 1);
                (lo, lo + ((1u64 << bits) - 1))
            };
            let mut first = g;
            while let Some(p) = self.groups[first as usize].prev {
                if self.groups[p as usize].label < lo {
                    break;
                }
                first = p;
            }
            let mut run = vec![first];
            let mut x = first;
            while let Some(nx) = self.groups[x as usize].next {
                // the new group is unlabelled but belongs to the run
                if nx != self.groups[g as usize].next.unwrap()
                    && self.groups[nx as usize].label > hi
                {
                    break;
                }
                run.push(nx);
                x = nx;
            }
            let count = run.len() as u64;
            let room = if bits == 64 { u64::MAX } else { 1u64 << bits };
            // density falls off with range size, which keeps relabels cheap
            if bits == 64 || count.saturating_mul(count) < room / 4 {
                let step = room / (count + 1);
                for (i, &y) in run.iter().enumerate() {
                    self.groups[y as usize].label = lo + step * (i as u64 + 1);
                }
                self.relabels += count;
                return;
            }
        }
    }
}
