// One animation descriptor per feedback motion token and one sound cue
// per sound token. The maps are exhaustive and one-to-one with the wire
// strings; anything else is rendered as an error banner, never a crash.

import type { MotionTokenId, SoundTokenId } from './types.js';

export interface AnimationDescriptor {
  name: string;
  part: 'antennae' | 'arm' | 'head';
  motion: 'oscillate' | 'drop';
  amplitudeDeg: number;
  cycles: number;
}

export const FEEDBACK_ANIMATIONS: Record<MotionTokenId, AnimationDescriptor> = {
  wag_antennae: {
    name: 'antennae-wag',
    part: 'antennae',
    motion: 'oscillate',
    amplitudeDeg: 30,
    cycles: 4,
  },
  arm_wave: {
    name: 'arm-wave',
    part: 'arm',
    motion: 'oscillate',
    amplitudeDeg: 45,
    cycles: 3,
  },
  nod_head: {
    name: 'head-nod',
    part: 'head',
    motion: 'oscillate',
    amplitudeDeg: 20,
    cycles: 3,
  },
  look_down_lower_antennae: {
    name: 'sad-droop',
    part: 'head',
    motion: 'drop',
    amplitudeDeg: 35,
    cycles: 1,
  },
};

export interface SoundCue {
  name: string;
  // successive (frequencyHz, relativeDuration) segments, synthesized on
  // a WebAudio oscillator scaled to the event's duration
  segments: [number, number][];
  kind: 'happy' | 'sad';
}

export const SOUND_CUES: Record<SoundTokenId, SoundCue> = {
  happy_beep_a: { name: 'beep-a', segments: [[880, 1], [1320, 1]], kind: 'happy' },
  happy_beep_b: { name: 'beep-b', segments: [[660, 1], [660, 1], [990, 2]], kind: 'happy' },
  happy_beep_c: { name: 'beep-c', segments: [[1175, 2], [880, 1]], kind: 'happy' },
  sad_tone: { name: 'sad', segments: [[440, 2], [330, 3]], kind: 'sad' },
};

export function isKnownMotion(token: string): token is MotionTokenId {
  return token in FEEDBACK_ANIMATIONS;
}

export function isKnownSound(token: string): token is SoundTokenId {
  return token in SOUND_CUES;
}
