# Copyright 2022, Slack Technologies, LLC. All rights reserved.
