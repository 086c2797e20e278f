/*
 * Copyright 2026 socsum contributors.
 *
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "socsum/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"socsum: broadcast soccer highlights summarizer"};
  app.get_formatter()->column_width(30);

  std::string video_path;
  std::string audio_path;
  std::string config_path;
  std::string out_dir = ".";
  int width = 0;
  int height = 0;
  std::string fps_text = "25/1";
  std::string pixfmt_text = "yuv420p";
  int audio_rate = 48000;
  double duration = 0.0;
  std::string stage;
  int threads = 1;
  std::string logo_path;
  std::string persons_path;
  std::string motion_path;

  app.add_option("--video", video_path, "raw video file (planar frames, no container)");
  app.add_option("--audio", audio_path, "audio file (WAV or raw mono s16le PCM)");
  app.add_option("--audio-rate", audio_rate, "sample rate of raw PCM audio in Hz")
      ->capture_default_str();
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--out", out_dir, "output directory for stage documents")
      ->capture_default_str();
  app.add_option("--width", width, "frame width in pixels");
  app.add_option("--height", height, "frame height in pixels");
  app.add_option("--fps", fps_text, "frame rate as a rational, e.g. 25/1 or 30000/1001")
      ->capture_default_str();
  app.add_option("--pixfmt", pixfmt_text, "pixel format: yuv420p or rgbp")
      ->capture_default_str();
  app.add_option("--duration", duration, "target summary duration in seconds");
  app.add_option("--stage", stage,
                 "run one stage: segment, keyframes, describe, score, select");
  app.add_option("--threads", threads, "worker thread count")->capture_default_str();
  app.add_option("--logo-template", logo_path, "replay logo template image (PGM or raw luma)");
  app.add_option("--persons-sidecar", persons_path, "person detections sidecar file");
  app.add_option("--motion-sidecar", motion_path, "precomputed motion fields sidecar file");

  CLI11_PARSE(app, argc, argv);

  try {
    socsum::PipelineConfig cfg;
    if (!config_path.empty())
      socsum::apply_config_text(cfg, socsum::read_file_text(config_path));

    /* command line wins over the config file */
    if (app.count("--video")) cfg.video_path = video_path;
    if (app.count("--audio")) cfg.audio_path = audio_path;
    if (app.count("--audio-rate")) cfg.audio_rate = audio_rate;
    if (app.count("--out")) cfg.out_dir = out_dir;
    if (app.count("--width")) cfg.video.width = width;
    if (app.count("--height")) cfg.video.height = height;
    if (app.count("--fps")) cfg.video.fps = socsum::Rational::parse(fps_text);
    if (app.count("--pixfmt")) cfg.video.format = socsum::pixel_format_from_string(pixfmt_text);
    if (app.count("--duration")) cfg.total_duration_s = duration;
    if (app.count("--threads")) cfg.threads = threads;
    if (app.count("--logo-template")) cfg.logo_template_path = logo_path;
    if (app.count("--persons-sidecar")) cfg.persons_sidecar_path = persons_path;
    if (app.count("--motion-sidecar")) cfg.motion_sidecar_path = motion_path;

    if (cfg.threads < 1) throw socsum::config_error("--threads must be at least 1");

    if (stage.empty())
      socsum::run_pipeline(cfg);
    else
      socsum::run_stage(stage, cfg);
  } catch (const socsum::error& e) {
    std::cerr << "socsum: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "socsum: unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
