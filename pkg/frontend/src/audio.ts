// WebAudio synthesis of the feedback sound cues.

import type { SoundCue } from './animations.js';

let context: AudioContext | null = null;

function audioContext(): AudioContext | null {
  if (typeof window === 'undefined' || !('AudioContext' in window)) {
    return null;
  }
  if (context === null) {
    context = new AudioContext();
  }
  return context;
}

/** Play a cue scaled to the given duration; silently a no-op where
 * WebAudio is unavailable (tests, old browsers). */
export function playCue(cue: SoundCue, durationMs: number): void {
  const ctx = audioContext();
  if (ctx === null) return;
  const total = cue.segments.reduce((acc, [, d]) => acc + d, 0);
  let t = ctx.currentTime;
  const gain = ctx.createGain();
  gain.gain.value = 0.12;
  gain.connect(ctx.destination);
  for (const [freq, rel] of cue.segments) {
    const osc = ctx.createOscillator();
    osc.type = cue.kind === 'happy' ? 'triangle' : 'sine';
    osc.frequency.value = freq;
    osc.connect(gain);
    const seconds = (durationMs / 1000) * (rel / total);
    osc.start(t);
    osc.stop(t + seconds * 0.9);
    t += seconds;
  }
}
